#pragma once

#include "phasic/data/manifest.hpp"
#include "phasic/eval/folds.hpp"
#include "phasic/eval/metrics.hpp"
#include "phasic/fusion/ensemble.hpp"

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace phasic::eval {

/// Which experiments each model was trained on and which model scored each
/// sample. Stored next to a score file as `<file>.provenance.json`:
/// {"models": {id: {"train_experiments": [...]}}, "samples": {sample_id: id}}.
struct Provenance {
    std::map<std::string, std::vector<std::string>> models;
    std::map<std::string, std::string> samples;
};

std::filesystem::path provenance_path(const std::filesystem::path& score_file);
Provenance read_provenance(const std::filesystem::path& path);
void write_provenance(const std::filesystem::path& path, const Provenance& p);

/// Throws ProtocolViolation when a sample was scored by a model trained on
/// any experiment of the sample's test fold, or when a sample has no
/// recorded model. `experiment_of` maps sample id to experiment id.
void check_provenance(const Provenance& p, const FoldPlan& plan,
                      const std::map<std::string, std::string>& experiment_of, const std::string& source);

/// One row per sample id; the backgrounds of a recording share its id,
/// label and experiment. Throws DataIntegrityError when they disagree.
struct SampleInfo {
    std::string sample_id;
    std::string experiment_id;
    Label label = Label::NoRelease;
};
std::vector<SampleInfo> unique_samples(std::span<const data::SampleRecord> records);

struct FoldReport {
    int fold = 0;
    std::size_t samples = 0;
    MetricsReport metrics;
};

struct CrossValidatedReport {
    std::string ensemble;
    std::size_t members = 0;
    MetricsReport pooled;
    std::vector<FoldReport> folds;
    std::vector<fusion::FusedSample> fused;
};

struct RunOptions {
    /// Fail when a member's score file has no provenance sidecar.
    bool require_provenance = true;
    MetricsMode mode = MetricsMode::Lenient;
    int workers = 1;
};

/// Fuses the ensemble over every sample of the manifest, checks provenance
/// against the plan, and reports metrics per fold and pooled. Pooled counts
/// are the sum of the fold counts; pooled AUC ranks all samples together.
CrossValidatedReport cross_validated_run(const fusion::EnsembleConfig& config, const FoldPlan& plan,
                                         std::span<const data::SampleRecord> manifest, const RunOptions& options = {});

/// Same, over already loaded member scores keyed by member key.
CrossValidatedReport cross_validated_run(const fusion::EnsembleConfig& config, const FoldPlan& plan,
                                         std::span<const data::SampleRecord> manifest,
                                         const std::map<std::string, fusion::ScoreTable>& member_scores,
                                         const std::map<std::string, Provenance>& provenance,
                                         const RunOptions& options = {});

}  // namespace phasic::eval
