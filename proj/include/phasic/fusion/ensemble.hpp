#pragma once

#include "phasic/fusion/detector.hpp"
#include "phasic/fusion/score_io.hpp"
#include "phasic/fusion/scores.hpp"

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace phasic::fusion {

enum class MemberKind {
    Classifier,  ///< one score row per sample
    Patch,       ///< one row per automatic patch, reduced by the max rule
    Detector,    ///< detector boxes, mapped to scores
};
std::string_view member_kind_name(MemberKind k);
MemberKind parse_member_kind(std::string_view s);

struct EnsembleMember {
    std::string background;  ///< A, B or C
    std::string method;      ///< O, Z1, P200, gbvs.roi, detector, ...
    MemberKind kind = MemberKind::Classifier;
    std::filesystem::path source;
    DetectorMapping mapping = DetectorMapping::MaxConfidence;

    std::string key() const { return background + "/" + method; }
};

struct EnsembleConfig {
    std::string name;
    std::vector<EnsembleMember> members;

    /// Throws InvalidArgument on an empty member list, duplicated keys or a
    /// background outside {A,B,C}.
    void validate() const;
};

/// Reads the member's source and reduces it to one score per sample. Detector
/// members need the sample list, since samples without boxes are absent.
ScoreTable load_member_scores(const EnsembleMember& member, std::span<const std::string> sample_ids);

struct FusedSample {
    std::string sample_id;
    ScoreVector fused;
    Label prediction = Label::NoRelease;
};

/// Sum-rule fusion of every member for every sample, sorted by sample id.
/// `member_scores` is keyed by member key. Throws DataIntegrityError listing
/// the missing (sample, member) pairs.
std::vector<FusedSample> run_ensemble(const EnsembleConfig& config, std::span<const std::string> sample_ids,
                                      const std::map<std::string, ScoreTable>& member_scores, int workers = 1);

/// Loads every member then fuses.
std::vector<FusedSample> run_ensemble(const EnsembleConfig& config, std::span<const std::string> sample_ids,
                                      int workers = 1);

void write_fused_csv(const std::filesystem::path& path, std::span<const FusedSample> fused);

/// Ensembles document: {"ensembles": [{"name", "members": [{"background",
/// "method", "kind", "source", "mapping"?}]}]}. Relative sources resolve
/// against the document's directory.
std::vector<EnsembleConfig> read_ensembles(const std::filesystem::path& path);
void write_ensembles(const std::filesystem::path& path, std::span<const EnsembleConfig> configs);

/// Method ids of one background: 3 global, 2 patch, 15 saliency.
std::vector<std::string> global_method_ids();
std::vector<std::string> patch_method_ids();
std::vector<std::string> saliency_method_ids();
std::vector<std::string> all_method_ids();
inline constexpr const char* kDetectorMethod = "detector";

/// Score-file layout used by the standard ensembles: <root>/<bg>/<method>.csv.
std::filesystem::path member_score_path(const std::filesystem::path& root, const std::string& background,
                                        const std::string& method);

/// The ten result rows of the paper's table: A/O, A/Z1, A/Z2, A/Global,
/// Global, Patch, Detector, Global+Patch, Global+Patch+Saliency, AllMethods.
std::vector<EnsembleConfig> standard_ensembles(const std::filesystem::path& score_root);

}  // namespace phasic::fusion
