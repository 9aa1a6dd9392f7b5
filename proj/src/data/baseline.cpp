#include "phasic/data/baseline.hpp"

#include "phasic/core/error.hpp"
#include "phasic/core/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace phasic::data {

FeatureVector image_features(const ImageMatrix& img, int side) {
    const Matrix small = resize_bilinear(to_grayscale(img).plane(0), side, side);
    return small.data();
}

BaselineScorer BaselineScorer::train(std::span<const LabeledFeatures> train, double shrinkage) {
    if (train.empty()) throw InvalidArgument("baseline scorer: empty training set");
    const std::size_t d = train.front().features.size();
    if (d == 0) throw InvalidArgument("baseline scorer: empty feature vectors");
    std::vector<double> mean[2] = {std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
    std::size_t count[2] = {0, 0};
    for (const auto& s : train) {
        if (s.features.size() != d) throw InvalidArgument("baseline scorer: feature vectors differ in length");
        const int c = s.label == Label::Release ? 1 : 0;
        for (std::size_t k = 0; k < d; ++k) mean[c][k] += s.features[k];
        ++count[c];
    }
    if (count[0] == 0 || count[1] == 0) throw InvalidArgument("baseline scorer: training set has a single class");
    for (int c = 0; c < 2; ++c) {
        for (double& v : mean[c]) v /= static_cast<double>(count[c]);
    }

    std::vector<double> var(d, 0.0);
    for (const auto& s : train) {
        const auto& m = mean[s.label == Label::Release ? 1 : 0];
        for (std::size_t k = 0; k < d; ++k) var[k] += (s.features[k] - m[k]) * (s.features[k] - m[k]);
    }
    double mean_var = 0.0;
    for (double& v : var) {
        v /= static_cast<double>(train.size());
        mean_var += v;
    }
    mean_var /= static_cast<double>(d);

    BaselineScorer model;
    model.weights_.resize(d);
    double mid = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        const double denom = (1.0 - shrinkage) * var[k] + shrinkage * mean_var + 1e-12;
        model.weights_[k] = (mean[1][k] - mean[0][k]) / denom;
        mid += model.weights_[k] * 0.5 * (mean[1][k] + mean[0][k]);
    }
    model.bias_ = -mid;

    double sq = 0.0, total = 0.0;
    for (const auto& s : train) {
        const double m = model.margin(s.features);
        total += m;
        sq += m * m;
    }
    const double n = static_cast<double>(train.size());
    const double spread = std::sqrt(std::max(0.0, sq / n - (total / n) * (total / n)));
    model.scale_ = spread > 1e-12 ? spread : 0.0;
    return model;
}

double BaselineScorer::margin(std::span<const double> x) const {
    if (x.size() != weights_.size()) throw InvalidArgument("baseline scorer: feature length mismatch");
    double m = bias_;
    for (std::size_t k = 0; k < x.size(); ++k) m += weights_[k] * x[k];
    return m;
}

fusion::ScoreVector BaselineScorer::score(std::span<const double> x) const {
    if (scale_ == 0.0) return {0.5, 0.5};
    const double release = 1.0 / (1.0 + std::exp(-margin(x) / scale_));
    return {1.0 - release, release};
}

std::vector<fusion::ScoreVector> baseline_score(std::span<const LabeledFeatures> train,
                                                std::span<const FeatureVector> test) {
    const BaselineScorer model = BaselineScorer::train(train);
    std::vector<fusion::ScoreVector> out;
    out.reserve(test.size());
    for (const auto& x : test) out.push_back(model.score(x));
    return out;
}

BaselineDetector::Peak BaselineDetector::strongest_deviation(const ImageMatrix& zone, double sigma) {
    const Matrix gray = to_grayscale(zone).plane(0);
    Matrix dev(gray.width(), gray.height());
    std::vector<double> row;
    for (int y = 0; y < gray.height(); ++y) {
        row.assign(gray.row(y).begin(), gray.row(y).end());
        auto mid = row.begin() + static_cast<std::ptrdiff_t>(row.size() / 2);
        std::nth_element(row.begin(), mid, row.end());
        const double median = *mid;
        for (int x = 0; x < gray.width(); ++x) dev.at(x, y) = std::abs(gray.at(x, y) - median);
    }
    const Matrix smooth = gaussian_blur(dev, sigma);
    Peak best{smooth.at(0, 0), 0, 0};
    for (int y = 0; y < smooth.height(); ++y) {
        for (int x = 0; x < smooth.width(); ++x) {
            if (smooth.at(x, y) > best.value) best = {smooth.at(x, y), x, y};
        }
    }
    return best;
}

BaselineDetector BaselineDetector::train(std::span<const Example> releases, double min_confidence) {
    if (releases.empty()) throw InvalidArgument("baseline detector: needs at least one release image");
    BaselineDetector d;
    d.min_confidence_ = min_confidence;
    d.sigma_ = std::max(1.0, releases.front().zone.height() / 20.0);
    std::vector<double> peaks, widths;
    for (const auto& e : releases) {
        peaks.push_back(strongest_deviation(e.zone, d.sigma_).value);
        widths.push_back(std::max(1, e.interval_width));
    }
    std::sort(peaks.begin(), peaks.end());
    std::sort(widths.begin(), widths.end());
    const auto quantile = [](const std::vector<double>& v, double q) {
        return v[static_cast<std::size_t>(std::floor(q * static_cast<double>(v.size() - 1)))];
    };
    // Nine in ten training releases clear the 0.5 confidence mark.
    d.threshold_ = quantile(peaks, 0.1);
    d.spread_ = std::max(1e-6, 0.25 * (quantile(peaks, 0.5) - quantile(peaks, 0.1)) + 1e-3);
    d.box_width_ = quantile(widths, 0.5);
    d.box_height_ = releases.front().zone.height() / 3.0;
    return d;
}

std::vector<fusion::DetectionBox> BaselineDetector::detect(const ImageMatrix& zone) const {
    const Peak p = strongest_deviation(zone, sigma_);
    const double confidence = 1.0 / (1.0 + std::exp(-(p.value - threshold_) / spread_));
    if (confidence < min_confidence_) return {};
    const double x0 = std::clamp(p.x - box_width_ / 2.0, 0.0, std::max(0.0, zone.width() - box_width_));
    const double y0 = std::clamp(p.y - box_height_ / 2.0, 0.0, std::max(0.0, zone.height() - box_height_));
    return {{x0, y0, std::min<double>(box_width_, zone.width()), std::min<double>(box_height_, zone.height()), confidence}};
}

}  // namespace phasic::data
