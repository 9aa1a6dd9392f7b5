#pragma once

#include "phasic/core/label.hpp"

#include <cstddef>
#include <optional>
#include <span>

namespace phasic::eval {

struct Confusion {
    std::size_t tp = 0;
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + tn + fp + fn; }
    Confusion& operator+=(const Confusion& o);
    bool operator==(const Confusion&) const = default;
};

Confusion confusion(std::span<const Label> labels, std::span<const Label> predictions);

/// Rates that need a class absent from the labels are left empty.
struct MetricsReport {
    Confusion counts;
    double accuracy = 0.0;
    std::optional<double> auc;
    std::optional<double> f1;
    std::optional<double> sensitivity;
    std::optional<double> specificity;
};

enum class MetricsMode {
    Strict,   ///< undefined rates throw UndefinedMetricError
    Lenient,  ///< undefined rates are reported as missing
};

/// Area under the ROC curve of `release_scores` (higher means release), by
/// the trapezoidal rule over all distinct thresholds with (0,0) and (1,1)
/// included. Tied scores form one ROC step. Empty when a class is absent.
std::optional<double> roc_auc(std::span<const Label> labels, std::span<const double> release_scores);

/// Rates derived from confusion counts alone; AUC is left empty.
MetricsReport metrics_from_counts(const Confusion& c, MetricsMode mode = MetricsMode::Strict);

MetricsReport compute_metrics(std::span<const Label> labels, std::span<const Label> predictions,
                              std::span<const double> release_scores, MetricsMode mode = MetricsMode::Strict);

}  // namespace phasic::eval
