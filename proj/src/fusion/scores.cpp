#include "phasic/fusion/scores.hpp"

#include "phasic/core/error.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace phasic::fusion {

Label predict(const ScoreVector& s) { return s.release > s.no_release ? Label::Release : Label::NoRelease; }

ScoreVector sum_fuse(std::span<const ScoreVector> scores) {
    if (scores.empty()) throw InvalidArgument("sum_fuse: no scores to fuse");
    std::vector<double> a(scores.size()), b(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        a[i] = scores[i].no_release;
        b[i] = scores[i].release;
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    ScoreVector out;
    for (double v : a) out.no_release += v;
    for (double v : b) out.release += v;
    return out;
}

ScoreVector max_rule_patches(std::span<const PatchScore> patches) {
    if (patches.empty()) throw InvalidArgument("max_rule_patches: no patch scores");
    const PatchScore* best = &patches.front();
    for (const auto& p : patches) {
        if (p.score.release > best->score.release ||
            (p.score.release == best->score.release && p.x_offset < best->x_offset)) {
            best = &p;
        }
    }
    return best->score;
}

ScoreVector max_rule_patches(std::span<const ScoreVector> patches) {
    std::vector<PatchScore> indexed;
    indexed.reserve(patches.size());
    for (std::size_t i = 0; i < patches.size(); ++i) indexed.push_back({static_cast<int>(i), patches[i]});
    return max_rule_patches(std::span<const PatchScore>(indexed));
}

}  // namespace phasic::fusion
