#pragma once

#include "phasic/core/image.hpp"
#include "phasic/saliency/feature_map.hpp"
#include "phasic/saliency/params.hpp"

#include <vector>

namespace phasic::saliency {

/// The 42 center-surround feature maps of the Itti-Koch-Niebur model
/// (6 intensity, 12 color opponency, 24 orientation), each at its center scale,
/// computed on the working-resolution copy of `img`.
std::vector<FeatureMap> simpsal_feature_maps(const ImageMatrix& img, const SimpSalParams& params = {});

/// Max-normalization N(.): rescale to [0,1] and multiply by (1 - mean of the
/// other local maxima)^2. Flat maps come back all-zero.
Matrix itti_normalize(const Matrix& m, double local_max_floor = 0.1);

/// Static saliency map: feature maps are normalized, added across scales at
/// scale 4 into intensity, color and orientation conspicuity maps, averaged,
/// then upsampled to the input size. Requires min(width, height) >= 64.
SaliencyMap simpsal(const ImageMatrix& img, const SimpSalParams& params = {});

}  // namespace phasic::saliency
