#pragma once

#include "phasic/core/image.hpp"
#include "phasic/saliency/params.hpp"

namespace phasic::saliency {

/// Spectral-residual saliency on the grayscale image resampled so its shorter
/// side is params.working_min_dim. The result is upsampled back to the input
/// size. Requires at least 8x8 input.
SaliencyMap spectral_residual(const ImageMatrix& img, const SpectralResidualParams& params = {});

/// The raw (pre-normalization) squared-magnitude map at working resolution.
Matrix spectral_residual_raw(const Matrix& gray, const SpectralResidualParams& params = {});

}  // namespace phasic::saliency
