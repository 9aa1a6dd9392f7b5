#pragma once

#include "phasic/data/manifest.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace phasic::eval {

/// Experiment to fold assignment. All samples of one experiment share a fold.
struct FoldPlan {
    int k = 10;
    std::map<std::string, int> assignment;

    /// Throws InvalidArgument when k < 1 or a fold index is outside [0, k).
    void validate() const;
    /// Throws ProtocolViolation when the experiment is not in the plan.
    int fold_of(const std::string& experiment_id) const;
    std::vector<std::string> experiments_in(int fold) const;
};

/// Experiments are shuffled by `seed`, stably sorted by descending sample
/// count and each is assigned to the fold holding the fewest samples so far
/// (lowest index on ties). Throws InvalidArgument when there are fewer
/// distinct experiments than folds.
FoldPlan grouped_kfold(std::span<const data::SampleRecord> samples, int k = 10, std::uint64_t seed = 0);

/// Record indices of one split.
struct FoldSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};
FoldSplit split(const FoldPlan& plan, std::span<const data::SampleRecord> samples, int fold);

/// Verifies that every sample's experiment is planned and that no experiment
/// lands on both sides of any split. Throws ProtocolViolation otherwise.
void check_grouping(const FoldPlan& plan, std::span<const data::SampleRecord> samples);

/// `experiment_id,fold` CSV. k is the largest fold index plus one unless
/// given. An experiment listed twice with different folds is a
/// ProtocolViolation; other malformed rows raise IngestionError.
FoldPlan read_fold_plan(const std::filesystem::path& path, int k = 0);
void write_fold_plan(const std::filesystem::path& path, const FoldPlan& plan);

}  // namespace phasic::eval
