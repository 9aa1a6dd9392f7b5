#pragma once

#include "phasic/core/image.hpp"
#include "phasic/core/label.hpp"
#include "phasic/fusion/detector.hpp"
#include "phasic/fusion/scores.hpp"

#include <span>
#include <vector>

namespace phasic::data {

using FeatureVector = std::vector<double>;

/// 32x32 grayscale resample of the image, flattened row-major.
FeatureVector image_features(const ImageMatrix& img, int side = 32);

struct LabeledFeatures {
    FeatureVector features;
    Label label = Label::NoRelease;
};

/// Two-class linear model: shrinkage LDA with a diagonal covariance. Scores
/// are the logistic of the margin divided by the spread of training margins.
class BaselineScorer {
public:
    /// Throws InvalidArgument on an empty set, one class only, or ragged features.
    static BaselineScorer train(std::span<const LabeledFeatures> train, double shrinkage = 0.1);

    double margin(std::span<const double> x) const;
    fusion::ScoreVector score(std::span<const double> x) const;

private:
    std::vector<double> weights_;
    double bias_ = 0.0;
    double scale_ = 0.0;  ///< 0 when the model carries no signal
};

/// Scores every test vector with a model trained on `train`.
std::vector<fusion::ScoreVector> baseline_score(std::span<const LabeledFeatures> train,
                                                std::span<const FeatureVector> test);

/// Release detector for false-color plots: finds the strongest smoothed
/// deviation from the per-row median inside a zone and calibrates its height
/// on release images only.
class BaselineDetector {
public:
    struct Example {
        ImageMatrix zone;
        int interval_width = 0;  ///< labeled release interval width, pixels
    };

    /// Needs at least one release example. `min_confidence` drops weak boxes.
    static BaselineDetector train(std::span<const Example> releases, double min_confidence = 0.05);

    /// Boxes in zone coordinates (at most one).
    std::vector<fusion::DetectionBox> detect(const ImageMatrix& zone) const;

    /// Peak of the smoothed deviation map and where it lies.
    struct Peak {
        double value = 0.0;
        int x = 0;
        int y = 0;
    };
    static Peak strongest_deviation(const ImageMatrix& zone, double sigma);

private:
    double sigma_ = 1.0;
    double threshold_ = 0.0;  ///< deviation giving confidence 0.5
    double spread_ = 1.0;
    double box_width_ = 1.0;
    double box_height_ = 1.0;
    double min_confidence_ = 0.05;
};

}  // namespace phasic::data
