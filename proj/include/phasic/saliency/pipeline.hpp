#pragma once

#include "phasic/core/image.hpp"
#include "phasic/saliency/params.hpp"

#include <string_view>

namespace phasic::saliency {

/// Runs one detector on a single image. Co-saliency treats the image as a
/// group of one; single-channel input is replicated to RGB where needed.
SaliencyMap compute_saliency(Method method, const ImageMatrix& img, const SaliencyParams& params = {});

/// The three images derived from one saliency map.
struct SaliencyTriplet {
    SaliencyMap map;
    BinaryMask mask;
    ImageMatrix fg;
    ImageMatrix fg_roi;
    ImageMatrix roi;
    /// Set when the crop was empty and fg was copied into fg_roi and roi.
    bool roi_substituted = false;
};

/// FG, FG-ROI and ROI of `o` under `map`, thresholded at `threshold` with the
/// row/column threshold taken as `line_fraction` of the line length.
/// Throws EmptyRoiError when the crop removes everything.
SaliencyTriplet triplet_from_map(const ImageMatrix& o, const SaliencyMap& map, double threshold,
                                 double line_fraction, std::string_view sample_id = {});

/// Detector + threshold + extraction. Throws EmptyRoiError on an empty crop.
SaliencyTriplet saliency_triplet(const ImageMatrix& o, Method method, const SaliencyParams& params = {},
                                 std::string_view sample_id = {});

/// As saliency_triplet, but an empty crop puts FG into the ROI slots and sets
/// roi_substituted instead of throwing.
SaliencyTriplet saliency_triplet_or_substitute(const ImageMatrix& o, Method method, const SaliencyParams& params = {},
                                               std::string_view sample_id = {});

}  // namespace phasic::saliency
