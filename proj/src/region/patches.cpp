#include "phasic/region/patches.hpp"

#include "phasic/core/error.hpp"

#include <algorithm>
#include <string>

namespace phasic::region {

namespace {

ImageMatrix crop_columns(const ImageMatrix& zone, int x0, int w) {
    ImageMatrix out(w, zone.height(), zone.channels());
    for (int c = 0; c < zone.channels(); ++c) {
        for (int y = 0; y < zone.height(); ++y) {
            for (int x = 0; x < w; ++x) out.at(x, y, c) = zone.at(x0 + x, y, c);
        }
    }
    return out;
}

}  // namespace

std::string_view patch_mode_name(PatchMode m) { return m == PatchMode::Manual ? "manual" : "auto"; }

Patch manual_patch(const ImageMatrix& zone, int peak_x, int size) {
    if (size < 1) throw InvalidArgument("manual_patch: size must be >= 1");
    if (zone.height() != size) {
        throw InvalidArgument("manual_patch: zone height " + std::to_string(zone.height()) + " differs from patch size " +
                              std::to_string(size));
    }
    if (zone.width() < size) {
        throw InvalidArgument("manual_patch: zone width " + std::to_string(zone.width()) + " is narrower than " +
                              std::to_string(size));
    }
    if (peak_x < 0 || peak_x >= zone.width()) {
        throw InvalidArgument("manual_patch: peak x " + std::to_string(peak_x) + " outside the zone");
    }
    const int x0 = std::clamp(peak_x - size / 2, 0, zone.width() - size);
    return {crop_columns(zone, x0, size), x0};
}

PatchSet auto_patches(const ImageMatrix& zone, int window_w, int stride, std::string_view source_id) {
    if (window_w < 1 || stride < 1) throw InvalidArgument("auto_patches: window and stride must be >= 1");
    if (zone.width() < window_w) {
        throw InvalidArgument("auto_patches: zone width " + std::to_string(zone.width()) + " is narrower than window " +
                              std::to_string(window_w));
    }
    const int span = zone.width() - window_w;
    if (span % stride != 0) {
        throw InvalidArgument("auto_patches: " + std::to_string(span % stride) + " pixel(s) left over: (" +
                              std::to_string(zone.width()) + " - " + std::to_string(window_w) +
                              ") is not divisible by stride " + std::to_string(stride));
    }
    PatchSet set{std::string(source_id), {}, PatchMode::Automatic};
    for (int x0 = 0; x0 <= span; x0 += stride) set.patches.push_back({crop_columns(zone, x0, window_w), x0});
    return set;
}

ImageMatrix pad_to_square(const ImageMatrix& patch, int size) {
    if (patch.height() != size) {
        throw InvalidArgument("pad_to_square: patch height " + std::to_string(patch.height()) + " differs from " +
                              std::to_string(size));
    }
    if (patch.width() > size) {
        throw InvalidArgument("pad_to_square: patch width " + std::to_string(patch.width()) + " exceeds " +
                              std::to_string(size));
    }
    if (patch.width() == size) return patch;
    ImageMatrix out(size, size, patch.channels(), 0.0);
    for (int c = 0; c < patch.channels(); ++c) {
        for (int y = 0; y < size; ++y) {
            for (int x = 0; x < patch.width(); ++x) out.at(x, y, c) = patch.at(x, y, c);
        }
    }
    return out;
}

std::string_view patch_method_id(PatchMethod m) { return m == PatchMethod::Common ? "P200" : "P290"; }

PatchMethod parse_patch_method(std::string_view id) {
    if (id == "P200") return PatchMethod::Common;
    if (id == "P290") return PatchMethod::Concatenated;
    throw InvalidArgument("unknown patch method '" + std::string(id) + "'");
}

int patch_side(PatchMethod m, const Geometry& g) {
    return m == PatchMethod::Common ? g.common_height() : g.concat_height();
}

ImageMatrix patch_zone(PatchMethod m, const ImageMatrix& img, const Geometry& g) {
    return m == PatchMethod::Common ? zone_common(img, g) : zone_concat(img, g);
}

Patch training_patch(PatchMethod m, const ImageMatrix& img, int peak_x, const Geometry& g) {
    return manual_patch(patch_zone(m, img, g), peak_x, patch_side(m, g));
}

PatchSet test_patches(PatchMethod m, const ImageMatrix& img, const Geometry& g, std::string_view source_id) {
    PatchSet set = auto_patches(patch_zone(m, img, g), g, source_id);
    const int side = patch_side(m, g);
    for (auto& p : set.patches) p.image = pad_to_square(p.image, side);
    return set;
}

}  // namespace phasic::region
