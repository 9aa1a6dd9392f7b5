#pragma once

#include "phasic/core/image.hpp"
#include "phasic/saliency/feature_map.hpp"
#include "phasic/saliency/params.hpp"

#include <vector>

namespace phasic::saliency {

/// Detail-only reconstructions per color channel (Lab) and level:
/// map(c, s) = (IDWT of the detail bands of levels 1..s)^2.
std::vector<FeatureMap> wavelet_feature_maps(const ImageMatrix& img, const WaveletSaliencyParams& params = {});

/// Per-pixel -log density of a Gaussian fitted to the stacked feature vectors
/// (covariance regularized by `ridge` * I). Finite for degenerate inputs.
Matrix gaussian_surprise(const std::vector<Matrix>& features, double ridge);

/// Decomposition depth actually used for an image of this size.
int wavelet_levels_for(int width, int height, const WaveletSaliencyParams& params);

/// Local (max over channels, summed over levels) and global (Gaussian
/// surprise) saliency, normalized, combined as local * exp(global), then
/// blurred and renormalized.
SaliencyMap wavelet_saliency(const ImageMatrix& img, const WaveletSaliencyParams& params = {});

}  // namespace phasic::saliency
