#include "phasic/fusion/detector.hpp"

#include "phasic/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace phasic::fusion {

void DetectionBox::validate() const {
    if (!(w > 0.0) || !(h > 0.0)) throw InvalidArgument("detection box must have positive width and height");
    if (!(confidence >= 0.0 && confidence <= 1.0)) throw InvalidArgument("detection confidence must lie in [0,1]");
}

namespace {

double best_confidence(std::span<const DetectionBox> boxes) {
    double best = 0.0;
    for (const auto& b : boxes) {
        b.validate();
        best = std::max(best, b.confidence);
    }
    return best;
}

}  // namespace

Label detector_decision(std::span<const DetectionBox> boxes, double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw InvalidArgument("detector threshold must lie in [0,1]");
    if (boxes.empty()) return Label::NoRelease;
    return best_confidence(boxes) > threshold ? Label::Release : Label::NoRelease;
}

ScoreVector detector_to_scores(std::span<const DetectionBox> boxes, DetectorMapping mapping, double threshold) {
    if (mapping == DetectorMapping::Decision) {
        return detector_decision(boxes, threshold) == Label::Release ? ScoreVector{0.0, 1.0} : ScoreVector{1.0, 0.0};
    }
    const double release = best_confidence(boxes);
    return {1.0 - release, release};
}

}  // namespace phasic::fusion
