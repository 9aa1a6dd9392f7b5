#pragma once

#include "phasic/core/label.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace phasic::data {

struct PeakPosition {
    int x = 0;
    int y = 0;
    bool operator==(const PeakPosition&) const = default;
};

struct ReleaseInterval {
    int x0 = 0;
    int x1 = 0;
    bool operator==(const ReleaseInterval&) const = default;
};

/// One dataset image. Release samples carry a peak and an interval,
/// no-release samples carry neither.
struct SampleRecord {
    std::string sample_id;
    std::string experiment_id;
    std::string background;  ///< A, B or C
    Label label = Label::NoRelease;
    std::filesystem::path image_path;
    std::optional<PeakPosition> peak;
    std::optional<ReleaseInterval> interval;

    bool operator==(const SampleRecord&) const = default;
};

bool is_background(std::string_view b);

struct ManifestSummary {
    std::size_t release = 0;
    std::size_t no_release = 0;
    std::map<std::string, std::size_t> per_experiment;
};

struct Manifest {
    std::vector<SampleRecord> records;
    std::vector<std::string> warnings;

    ManifestSummary summary() const;
};

struct LoadOptions {
    /// Fail when an image file is missing.
    bool check_images = true;
};

/// Reads a manifest CSV:
/// sample_id,experiment_id,background,label,image_path,peak_x,peak_y,interval_x0,interval_x1
/// Relative image paths resolve against the manifest's directory. Throws
/// IngestionError carrying the line number on any invalid row.
Manifest load_manifest(const std::filesystem::path& path, const LoadOptions& options = {});

/// Writes records with image paths relative to the manifest's directory when possible.
void write_manifest(const std::filesystem::path& path, std::span<const SampleRecord> records);

}  // namespace phasic::data
