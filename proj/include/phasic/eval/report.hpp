#pragma once

#include "phasic/eval/protocol.hpp"

#include <filesystem>
#include <span>
#include <string>

namespace phasic::eval {

struct ReportRow {
    std::string background;
    std::string method;
    std::size_t scores_fused = 0;
    MetricsReport metrics;
    std::vector<FoldReport> folds;
};

/// Background is the members' common background, or their list joined by
/// commas. Method is the ensemble name without a leading "<bg>/".
ReportRow report_row(const fusion::EnsembleConfig& config, const MetricsReport& metrics,
                     std::vector<FoldReport> folds = {});

/// Text table with columns Background, Method, Scores Fused, Accuracy, AUC,
/// F1, Sensitivity, Specificity. Rates are percentages with two decimals,
/// undefined rates print as n/a.
std::string format_table(std::span<const ReportRow> rows);

/// JSON document with the same rows, rates as fractions, undefined as null.
std::string report_json(std::span<const ReportRow> rows);
void write_report(const std::filesystem::path& dir, std::span<const ReportRow> rows);

std::vector<ReportRow> read_report_json(const std::filesystem::path& path);

}  // namespace phasic::eval
