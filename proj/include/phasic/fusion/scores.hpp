#pragma once

#include "phasic/core/label.hpp"

#include <span>

namespace phasic::fusion {

using phasic::Label;

/// Two-class score [no-release, release].
struct ScoreVector {
    double no_release = 0.0;
    double release = 0.0;

    bool operator==(const ScoreVector&) const = default;
};

/// Release iff the release component is strictly larger; ties go to no-release.
Label predict(const ScoreVector& s);

/// Componentwise sum. Each component is accumulated in sorted order, so the
/// result does not depend on the order of `scores`.
ScoreVector sum_fuse(std::span<const ScoreVector> scores);

struct PatchScore {
    int x_offset = 0;
    ScoreVector score;
};

/// Score vector of the patch with the largest release component; ties go to
/// the lowest offset.
ScoreVector max_rule_patches(std::span<const PatchScore> patches);
/// As above with patches given in offset order.
ScoreVector max_rule_patches(std::span<const ScoreVector> patches);

}  // namespace phasic::fusion
