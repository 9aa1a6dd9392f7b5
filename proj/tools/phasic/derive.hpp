#pragma once

#include "common.hpp"

#include "phasic/core/label.hpp"
#include "phasic/saliency/params.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace phasic::cli {

/// One image of a derived variant. Classifier variants have one "full" row
/// per sample; patch variants one "manual" training row and several "auto"
/// test rows per sample.
struct VariantRow {
    std::string sample_id;
    std::string experiment_id;
    Label label = Label::NoRelease;
    std::string mode;  ///< full, manual or auto
    int x_offset = 0;
    std::string file;  ///< relative to the variant directory
    std::string note;  ///< roi-substituted when the ROI crop was empty

    bool operator==(const VariantRow&) const = default;
};

std::vector<VariantRow> read_variant_manifest(const std::filesystem::path& path);
void write_variant_manifest(const std::filesystem::path& path, const std::vector<VariantRow>& rows);

/// <derived>/<bg>/<method>
std::filesystem::path variant_dir(const std::filesystem::path& derived, const std::string& background,
                                  const std::string& method);

/// Expands "all", "global", "patch", "saliency" and explicit ids into an
/// ordered list of the 20 per-background method ids.
std::vector<std::string> expand_methods(const std::vector<std::string>& spec);

struct DeriveOptions {
    std::filesystem::path dataset;
    std::filesystem::path out;
    std::vector<std::string> backgrounds;  ///< empty: every background in the dataset
    std::vector<std::string> methods = {"all"};
    saliency::SaliencyParams params;
    std::uint64_t seed = 0;  ///< places manual patches of no-release samples
    int workers = 1;
};

struct DeriveSummary {
    std::size_t variants = 0;
    std::size_t images = 0;
    std::size_t computed = 0;  ///< (sample, method) units produced
    std::size_t reused = 0;    ///< units skipped because their digest matched
    std::size_t substituted = 0;
};

/// Writes every requested variant of every background with a manifest.csv
/// each, reusing outputs whose input digest is unchanged.
DeriveSummary derive(const DeriveOptions& options, const Logger& log);

/// Patch center used for a no-release training sample: a fixed function of
/// the seed and the sample id.
int pseudo_peak_x(std::uint64_t seed, const std::string& sample_id, int width);

}  // namespace phasic::cli
