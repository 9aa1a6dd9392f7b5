#pragma once

#include "phasic/fusion/detector.hpp"
#include "phasic/fusion/scores.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace phasic::fusion {

/// Scores keyed by sample id (or `<sample>.p<offset>` for patch rows).
using ScoreTable = std::map<std::string, ScoreVector>;
/// Boxes keyed by sample id; absent ids had no detection.
using DetectionTable = std::map<std::string, std::vector<DetectionBox>>;

/// Header sample_id,score_no_release,score_release. Throws IngestionError on
/// malformed rows, negative scores or duplicated ids.
ScoreTable read_score_csv(const std::filesystem::path& path);
void write_score_csv(const std::filesystem::path& path, const ScoreTable& table);

/// Header sample_id,x,y,w,h,confidence; one row per box.
DetectionTable read_detector_csv(const std::filesystem::path& path);
void write_detector_csv(const std::filesystem::path& path, const DetectionTable& table);

/// Key of one patch row.
std::string patch_key(const std::string& sample_id, int x_offset);

/// Groups `<sample>.p<offset>` rows per sample and applies the max rule.
/// Throws DataIntegrityError on a row without a patch suffix.
ScoreTable collapse_patch_rows(const ScoreTable& rows);

}  // namespace phasic::fusion
