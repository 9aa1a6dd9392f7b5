#pragma once

#include "phasic/data/fscv.hpp"
#include "phasic/data/manifest.hpp"
#include "phasic/region/zones.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace phasic::data {

/// Parameters of one synthetic recording. Lengths are pixels at the given
/// width/height; scaled() shrinks every length together.
struct SynthParams {
    int width = 875;
    int height = 600;
    region::Geometry geometry;

    double noise_sigma = 0.08;      ///< Gaussian noise, clipped at 3 sigma
    double profile_amplitude = 0.25;  ///< potential-dependent background current
    double drift_amplitude = 0.35;    ///< slow drift over the recording
    double amplitude_min = 2.4;     ///< release blob peak current
    double amplitude_max = 4.0;
    double sigma_x_min = 20.0;      ///< rise width of the blob along time
    double sigma_x_max = 45.0;
    double sigma_y_min = 15.0;      ///< blob width along potential
    double sigma_y_max = 30.0;
    double decay_ratio_max = 2.0;   ///< decay width / rise width in [1, this]
    double lobe_probability = 0.5;  ///< chance of a negative lobe in the top rows

    /// Fixed blob center; random inside the common region when unset.
    std::optional<PeakPosition> blob_center;
    /// Recording-level background shape shared by samples of one experiment.
    std::uint64_t experiment_seed = 0;
    std::uint64_t seed = 0;

    SynthParams scaled(int factor) const;
    /// Throws InvalidArgument on inconsistent parameters, including a fixed
    /// blob center outside the common region, or amplitudes too low for the
    /// blob to dominate the background everywhere.
    void validate() const;
};

struct SynthSample {
    FscvMatrix matrix;
    std::optional<PeakPosition> peak;
    std::optional<ReleaseInterval> interval;
};

/// Smooth background + noise, plus an anisotropic release blob in the common
/// region when with_release is set. Bit-identical for identical params.
SynthSample synthesize_sample(const SynthParams& p, bool with_release);

struct DatasetSpec {
    int experiments = 30;
    int per_experiment = 10;  ///< samples per class per experiment
    std::uint64_t seed = 0;
    int scale = 1;            ///< divides the 875x600 geometry
    int workers = 1;
    Palette palette = default_palette();
};

struct DatasetSummary {
    std::size_t samples = 0;  ///< per background
    std::size_t images = 0;   ///< over all backgrounds
    std::vector<std::filesystem::path> manifests;
    std::vector<std::string> warnings;
};

/// Writes images/<bg>/<sample>.png and manifest_<bg>.csv for A, B and C plus
/// synth.json describing the geometry. Sample ids are shared across backgrounds.
DatasetSummary generate_dataset(const std::filesystem::path& out_dir, const DatasetSpec& spec);

/// Geometry recorded by generate_dataset; the default geometry when absent.
region::Geometry read_dataset_geometry(const std::filesystem::path& dataset_dir);

}  // namespace phasic::data
