#pragma once

#include "phasic/core/image.hpp"
#include "phasic/region/zones.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace phasic::region {

enum class PatchMode { Manual, Automatic };
std::string_view patch_mode_name(PatchMode m);

struct Patch {
    ImageMatrix image;
    int x_offset = 0;
};

struct PatchSet {
    std::string source_id;
    std::vector<Patch> patches;
    PatchMode mode = PatchMode::Automatic;
};

/// size x zone-height window centered on peak_x, shifted to stay inside the zone.
Patch manual_patch(const ImageMatrix& zone, int peak_x, int size);

/// Windows of width window_w every `stride` pixels from offset 0. The last
/// window must end exactly at the zone's right edge.
PatchSet auto_patches(const ImageMatrix& zone, int window_w, int stride, std::string_view source_id = {});
inline PatchSet auto_patches(const ImageMatrix& zone, const Geometry& g = {}, std::string_view source_id = {}) {
    return auto_patches(zone, g.window, g.stride, source_id);
}

/// Appends zero columns on the right up to size x size.
ImageMatrix pad_to_square(const ImageMatrix& patch, int size);

/// The two patch methods: window-sized patches of the common zone (P200 at the
/// default geometry) and padded patches of the concatenated zone (P290).
enum class PatchMethod { Common, Concatenated };
/// Ids P200 and P290, named after the default geometry whatever the scale.
std::string_view patch_method_id(PatchMethod m);
PatchMethod parse_patch_method(std::string_view id);
/// Side of the square patches the method produces.
int patch_side(PatchMethod m, const Geometry& g = {});
/// Zone the method cuts patches from.
ImageMatrix patch_zone(PatchMethod m, const ImageMatrix& img, const Geometry& g = {});

/// Training patch: manual crop of the method's zone around peak_x, padded square.
Patch training_patch(PatchMethod m, const ImageMatrix& img, int peak_x, const Geometry& g = {});
/// Test patches: automatic windows of the method's zone, each padded square.
PatchSet test_patches(PatchMethod m, const ImageMatrix& img, const Geometry& g = {}, std::string_view source_id = {});

}  // namespace phasic::region
