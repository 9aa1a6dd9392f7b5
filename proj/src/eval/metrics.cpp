#include "phasic/eval/metrics.hpp"

#include "phasic/core/error.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace phasic::eval {

Confusion& Confusion::operator+=(const Confusion& o) {
    tp += o.tp;
    tn += o.tn;
    fp += o.fp;
    fn += o.fn;
    return *this;
}

Confusion confusion(std::span<const Label> labels, std::span<const Label> predictions) {
    if (labels.size() != predictions.size()) {
        throw InvalidArgument("confusion: " + std::to_string(labels.size()) + " labels but " +
                              std::to_string(predictions.size()) + " predictions");
    }
    Confusion c;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool truth = labels[i] == Label::Release, pred = predictions[i] == Label::Release;
        if (truth && pred) ++c.tp;
        else if (truth) ++c.fn;
        else if (pred) ++c.fp;
        else ++c.tn;
    }
    return c;
}

std::optional<double> roc_auc(std::span<const Label> labels, std::span<const double> release_scores) {
    if (labels.size() != release_scores.size()) {
        throw InvalidArgument("roc_auc: " + std::to_string(labels.size()) + " labels but " +
                              std::to_string(release_scores.size()) + " scores");
    }
    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return release_scores[a] > release_scores[b]; });

    const auto pos = static_cast<std::uint64_t>(std::count(labels.begin(), labels.end(), Label::Release));
    const std::uint64_t neg = labels.size() - pos;
    if (pos == 0 || neg == 0) return std::nullopt;

    // Twice the area, in units of one TP x FP cell, stays an exact integer.
    std::uint64_t tp = 0, fp = 0, twice_area = 0;
    for (std::size_t i = 0; i < order.size();) {
        std::uint64_t dtp = 0, dfp = 0;
        const double s = release_scores[order[i]];
        for (; i < order.size() && release_scores[order[i]] == s; ++i) {
            (labels[order[i]] == Label::Release ? dtp : dfp) += 1;
        }
        twice_area += dfp * (2 * tp + dtp);
        tp += dtp;
        fp += dfp;
    }
    return static_cast<double>(twice_area) / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
}

MetricsReport metrics_from_counts(const Confusion& c, MetricsMode mode) {
    if (c.total() == 0) throw InvalidArgument("metrics: no samples");
    MetricsReport r;
    r.counts = c;
    r.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    auto undefined = [&](const char* what) {
        if (mode == MetricsMode::Strict) throw UndefinedMetricError(std::string("metrics: ") + what);
    };
    if (c.tp + c.fn > 0) {
        r.sensitivity = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    } else {
        undefined("sensitivity is undefined without release samples");
    }
    if (c.tn + c.fp > 0) {
        r.specificity = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
    } else {
        undefined("specificity is undefined without no-release samples");
    }
    if (2 * c.tp + c.fp + c.fn > 0) {
        r.f1 = static_cast<double>(2 * c.tp) / static_cast<double>(2 * c.tp + c.fp + c.fn);
    } else {
        undefined("F1 is undefined without release samples or release predictions");
    }
    return r;
}

MetricsReport compute_metrics(std::span<const Label> labels, std::span<const Label> predictions,
                              std::span<const double> release_scores, MetricsMode mode) {
    MetricsReport r = metrics_from_counts(confusion(labels, predictions), mode);
    r.auc = roc_auc(labels, release_scores);
    if (!r.auc && mode == MetricsMode::Strict) {
        throw UndefinedMetricError("metrics: AUC is undefined when one class is absent");
    }
    return r;
}

}  // namespace phasic::eval
