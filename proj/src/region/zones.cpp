#include "phasic/region/zones.hpp"

#include "phasic/core/error.hpp"

#include <string>

namespace phasic::region {

Geometry Geometry::scaled(int factor) const {
    if (factor < 1) throw InvalidArgument("geometry scale factor must be >= 1");
    for (int v : {common_begin, common_end, top_rows, window, stride}) {
        if (v % factor != 0) {
            throw InvalidArgument("geometry length " + std::to_string(v) + " is not divisible by scale " +
                                  std::to_string(factor));
        }
    }
    Geometry g{common_begin / factor, common_end / factor, top_rows / factor, window / factor, stride / factor};
    g.validate();
    return g;
}

void Geometry::validate() const {
    if (common_begin < 0 || common_end <= common_begin) throw InvalidArgument("geometry: empty common region");
    if (top_rows < 0 || top_rows > common_begin) throw InvalidArgument("geometry: top rows overlap the common region");
    if (window < 1 || stride < 1) throw InvalidArgument("geometry: window and stride must be >= 1");
}

ZoneSpec ZoneSpec::common(const Geometry& g) { return {{{g.common_begin, g.common_end}}}; }

ZoneSpec ZoneSpec::concatenated(const Geometry& g) {
    ZoneSpec s;
    if (g.top_rows > 0) s.row_ranges.emplace_back(0, g.top_rows);
    s.row_ranges.emplace_back(g.common_begin, g.common_end);
    return s;
}

int ZoneSpec::height() const {
    int h = 0;
    for (const auto& [a, b] : row_ranges) h += b - a;
    return h;
}

ImageMatrix extract_rows(const ImageMatrix& img, const ZoneSpec& spec) {
    int prev_end = 0;
    for (const auto& [a, b] : spec.row_ranges) {
        if (a < prev_end || b <= a) throw InvalidArgument("zone row ranges must be ascending and non-overlapping");
        prev_end = b;
    }
    if (spec.row_ranges.empty()) throw InvalidArgument("zone has no rows");
    if (prev_end > img.height()) {
        throw InvalidArgument("image has " + std::to_string(img.height()) + " rows; zone needs " +
                              std::to_string(prev_end));
    }
    ImageMatrix out(img.width(), spec.height(), img.channels());
    for (int c = 0; c < img.channels(); ++c) {
        int dst = 0;
        for (const auto& [a, b] : spec.row_ranges) {
            for (int y = a; y < b; ++y, ++dst) {
                for (int x = 0; x < img.width(); ++x) out.at(x, dst, c) = img.at(x, y, c);
            }
        }
    }
    return out;
}

ImageMatrix zone_common(const ImageMatrix& img, const Geometry& g) { return extract_rows(img, ZoneSpec::common(g)); }

ImageMatrix zone_concat(const ImageMatrix& img, const Geometry& g) {
    return extract_rows(img, ZoneSpec::concatenated(g));
}

std::string_view global_method_id(GlobalMethod m) {
    switch (m) {
        case GlobalMethod::Original: return "O";
        case GlobalMethod::Common: return "Z1";
        case GlobalMethod::Concatenated: return "Z2";
    }
    throw InvalidArgument("unknown global method");
}

GlobalMethod parse_global_method(std::string_view id) {
    for (GlobalMethod m : {GlobalMethod::Original, GlobalMethod::Common, GlobalMethod::Concatenated}) {
        if (global_method_id(m) == id) return m;
    }
    throw InvalidArgument("unknown global method '" + std::string(id) + "'");
}

ImageMatrix apply_global(GlobalMethod m, const ImageMatrix& img, const Geometry& g) {
    switch (m) {
        case GlobalMethod::Original: return img;
        case GlobalMethod::Common: return zone_common(img, g);
        case GlobalMethod::Concatenated: return zone_concat(img, g);
    }
    throw InvalidArgument("unknown global method");
}

}  // namespace phasic::region
