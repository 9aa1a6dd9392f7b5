#pragma once

#include "phasic/data/manifest.hpp"
#include "phasic/region/zones.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace phasic::cli {

/// Diagnostics go to stderr; data goes to files.
struct Logger {
    bool quiet = false;
    void info(std::string_view msg) const;
    void warn(std::string_view msg) const;
};

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// A synthetic or user dataset directory: manifest_<bg>.csv files plus an
/// optional synth.json carrying the geometry.
struct Dataset {
    std::filesystem::path dir;
    region::Geometry geometry;
    std::map<std::string, data::Manifest> manifests;  ///< by background

    /// Every record of every background.
    std::vector<data::SampleRecord> records() const;
};

std::filesystem::path manifest_path(const std::filesystem::path& dataset_dir, const std::string& background);

/// Loads the manifests of `backgrounds` (all present ones when empty).
Dataset load_dataset(const std::filesystem::path& dir, const std::vector<std::string>& backgrounds = {});

/// "A,C" -> {"A","C"}; validates each entry.
std::vector<std::string> parse_backgrounds(const std::string& list);
std::vector<std::string> split_list(const std::string& list);

bool directory_has_entries(const std::filesystem::path& dir);

}  // namespace phasic::cli
