#pragma once

#include "phasic/core/image.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phasic::region {

/// Row and patch geometry of the zoning methods. Defaults are for 875-pixel-wide
/// plots; scaled() divides every length for smaller synthetic images.
struct Geometry {
    int common_begin = 320;  ///< first row of the common release region
    int common_end = 520;    ///< one past its last row
    int top_rows = 90;       ///< rows [0, top_rows) prepended by the concatenated zone
    int window = 200;        ///< sliding-window width
    int stride = 135;        ///< sliding-window step

    int common_height() const { return common_end - common_begin; }
    int concat_height() const { return top_rows + common_height(); }

    /// Every length divided by `factor` (which must divide each length exactly).
    Geometry scaled(int factor) const;
    void validate() const;
};

/// Ordered, non-overlapping [start, end) row intervals.
struct ZoneSpec {
    std::vector<std::pair<int, int>> row_ranges;

    static ZoneSpec common(const Geometry& g);
    static ZoneSpec concatenated(const Geometry& g);
    int height() const;
};

/// Stacks the given row ranges of `img` top to bottom.
ImageMatrix extract_rows(const ImageMatrix& img, const ZoneSpec& spec);

/// Rows [common_begin, common_end).
ImageMatrix zone_common(const ImageMatrix& img, const Geometry& g = {});
/// Rows [0, top_rows) stacked above the common region.
ImageMatrix zone_concat(const ImageMatrix& img, const Geometry& g = {});

/// The three whole-image inputs: the original plot and the two zones.
enum class GlobalMethod { Original, Common, Concatenated };
/// Short ids: O, Z1, Z2.
std::string_view global_method_id(GlobalMethod m);
GlobalMethod parse_global_method(std::string_view id);
ImageMatrix apply_global(GlobalMethod m, const ImageMatrix& img, const Geometry& g = {});

}  // namespace phasic::region
