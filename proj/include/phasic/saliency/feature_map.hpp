#pragma once

#include "phasic/core/image.hpp"

#include <string>

namespace phasic::saliency {

enum class FeatureChannel { Intensity, ColorRG, ColorBY, Orientation, WaveletLevel };

struct FeatureMap {
    Matrix values;
    FeatureChannel channel = FeatureChannel::Intensity;
    int orientation_deg = 0;  ///< only for Orientation
    int center = 0;           ///< pyramid level (or wavelet level)
    int surround = 0;         ///< 0 when not a center-surround map
};

/// Shared red-green / blue-yellow opponency planes of an RGB image:
/// rg = (r - g) / max(r,g,b), by = (b - min(r,g)) / max(r,g,b), zeroed where
/// max(r,g,b) < 0.1 so dark pixels carry no hue.
struct OpponencyPlanes {
    Matrix intensity;
    Matrix rg;
    Matrix by;
};
OpponencyPlanes opponency_planes(const ImageMatrix& rgb);

/// Zero-mean even Gabor kernel for the given orientation (degrees).
Matrix gabor_kernel(double theta_deg, double sigma = 2.0, double wavelength = 6.0, double aspect = 0.5);

/// True when the map's dynamic range is below `eps` (treated as no signal).
bool is_flat(const Matrix& m, double eps = 1e-9);

}  // namespace phasic::saliency
