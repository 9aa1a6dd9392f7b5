#pragma once

#include "phasic/core/image.hpp"

#include <string_view>

namespace phasic::saliency {

/// Minimum mask-sum a column (over its rows) and a row (over its columns)
/// must reach to survive the region-of-interest crop.
struct RoiThreshold {
    double column = 0.0;
    double row = 0.0;

    static RoiThreshold uniform(double th) { return {th, th}; }
    /// Column threshold = fraction * height, row threshold = fraction * width.
    static RoiThreshold line_fraction(double fraction, int width, int height) {
        return {fraction * height, fraction * width};
    }
};

/// 1 where map > t (strict), 0 elsewhere. t must lie in (0,1).
BinaryMask threshold_mask(const SaliencyMap& map, double t);

/// Per-pixel, per-channel product of the image with the mask.
ImageMatrix foreground(const ImageMatrix& o, const BinaryMask& b);

/// Drops columns, then rows, whose mask sums fall below the threshold. Both sums
/// are taken on the unmodified mask; kept pixels keep their original values.
/// Throws EmptyRoiError when nothing survives.
ImageMatrix fg_roi(const ImageMatrix& o, const BinaryMask& b, RoiThreshold th, std::string_view sample_id = {});

/// fg_roi applied to foreground(o, b).
ImageMatrix roi(const ImageMatrix& o, const BinaryMask& b, RoiThreshold th, std::string_view sample_id = {});

}  // namespace phasic::saliency
