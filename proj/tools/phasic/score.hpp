#pragma once

#include "common.hpp"

#include "phasic/eval/folds.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace phasic::cli {

struct ScoreOptions {
    std::filesystem::path dataset;
    std::filesystem::path derived;
    std::filesystem::path out;
    eval::FoldPlan plan;
    std::vector<std::string> backgrounds;  ///< empty: every background in the dataset
    std::vector<std::string> methods = {"all"};
    bool detector = true;
    double shrinkage = 0.1;
    int feature_side = 32;
    int workers = 1;
};

struct ScoreSummary {
    std::size_t score_files = 0;
    std::size_t ensembles = 0;
};

/// For every fold, trains the baseline scorer on the other folds and scores
/// the fold's samples. Writes <out>/<bg>/<method>.csv, provenance sidecars,
/// <bg>/detector.csv and <out>/ensembles.json (the standard ensembles whose
/// members all exist).
ScoreSummary score_baseline(const ScoreOptions& options, const Logger& log);

}  // namespace phasic::cli
