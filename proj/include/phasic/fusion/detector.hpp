#pragma once

#include "phasic/fusion/scores.hpp"

#include <span>

namespace phasic::fusion {

struct DetectionBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;
    double confidence = 0.0;

    /// Throws InvalidArgument unless w, h > 0 and confidence is in [0,1].
    void validate() const;
};

/// No boxes: no-release. Otherwise release iff the best confidence is
/// strictly above `threshold`.
Label detector_decision(std::span<const DetectionBox> boxes, double threshold = 0.5);

enum class DetectorMapping {
    /// release = best confidence (0 without boxes), no_release = 1 - release.
    MaxConfidence,
    /// One-hot vector of detector_decision at the given threshold.
    Decision,
};

ScoreVector detector_to_scores(std::span<const DetectionBox> boxes, DetectorMapping mapping = DetectorMapping::MaxConfidence,
                               double threshold = 0.5);

}  // namespace phasic::fusion
