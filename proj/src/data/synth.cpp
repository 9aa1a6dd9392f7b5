#include "phasic/data/synth.hpp"

#include "phasic/core/error.hpp"
#include "phasic/core/csv.hpp"
#include "phasic/core/io.hpp"
#include "phasic/core/parallel.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

namespace phasic::data {

namespace {

// Uniform and normal draws from raw engine output, so generated data does
// not depend on the standard library's distribution implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

double normal(std::mt19937_64& rng) {
    const double u1 = 1.0 - unit(rng);
    const double u2 = unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Closest a random blob center may come to the common-region border.
double center_margin(const SynthParams& p) { return 0.25 * p.geometry.common_height(); }

}  // namespace

SynthParams SynthParams::scaled(int factor) const {
    if (factor < 1) throw InvalidArgument("scale factor must be >= 1");
    if (width % factor != 0 || height % factor != 0) {
        throw InvalidArgument("image size is not divisible by scale " + std::to_string(factor));
    }
    SynthParams p = *this;
    p.width = width / factor;
    p.height = height / factor;
    p.geometry = geometry.scaled(factor);
    p.sigma_x_min /= factor;
    p.sigma_x_max /= factor;
    p.sigma_y_min /= factor;
    p.sigma_y_max /= factor;
    if (blob_center) p.blob_center = PeakPosition{blob_center->x / factor, blob_center->y / factor};
    return p;
}

void SynthParams::validate() const {
    geometry.validate();
    if (width < 1 || height < geometry.common_end) {
        throw InvalidArgument("synthetic image " + std::to_string(width) + "x" + std::to_string(height) +
                              " is too small for the common region");
    }
    if (noise_sigma < 0 || profile_amplitude < 0 || drift_amplitude < 0) {
        throw InvalidArgument("noise and background amplitudes must be >= 0");
    }
    if (!(amplitude_min > 0 && amplitude_max >= amplitude_min)) throw InvalidArgument("invalid blob amplitude range");
    if (!(sigma_x_min > 0 && sigma_x_max >= sigma_x_min && sigma_y_min > 0 && sigma_y_max >= sigma_y_min)) {
        throw InvalidArgument("invalid blob width range");
    }
    if (!(decay_ratio_max >= 1.0)) throw InvalidArgument("decay ratio must be >= 1");
    if (!(lobe_probability >= 0.0 && lobe_probability <= 1.0)) throw InvalidArgument("lobe probability must lie in [0,1]");
    if (blob_center) {
        if (blob_center->y < geometry.common_begin || blob_center->y >= geometry.common_end) {
            throw InvalidArgument("blob center row " + std::to_string(blob_center->y) + " is outside the common region [" +
                                  std::to_string(geometry.common_begin) + ", " + std::to_string(geometry.common_end) + ")");
        }
        if (blob_center->x < 0 || blob_center->x >= width) throw InvalidArgument("blob center column outside the image");
    } else {
        // The blob peak must beat the background plus the blob's own tail at
        // the region border everywhere outside the common rows.
        const double background = profile_amplitude + drift_amplitude + 3.0 * noise_sigma;
        const double m = center_margin(*this);
        const double tail = std::exp(-m * m / (2.0 * sigma_y_max * sigma_y_max));
        if (!(amplitude_min * (1.0 - tail) > 2.0 * background)) {
            throw InvalidArgument("blob amplitude too low to dominate the background outside the common region");
        }
    }
}

SynthSample synthesize_sample(const SynthParams& p, bool with_release) {
    p.validate();
    const int w = p.width, h = p.height;

    // Recording-level shape: profile phases and drift direction.
    std::mt19937_64 exp_rng(p.experiment_seed);
    const double phase1 = uniform(exp_rng, 0.0, 2.0 * std::numbers::pi);
    const double phase2 = uniform(exp_rng, 0.0, 2.0 * std::numbers::pi);
    const double drift_sign = unit(exp_rng) < 0.5 ? -1.0 : 1.0;

    std::mt19937_64 rng(p.seed);
    const double jitter = uniform(rng, 0.8, 1.2);
    SynthSample out{{Matrix(w, h)}, std::nullopt, std::nullopt};
    for (int y = 0; y < h; ++y) {
        const double ry = static_cast<double>(y) / h;
        const double profile = p.profile_amplitude * jitter *
                               (0.6 * std::sin(2.0 * std::numbers::pi * 1.3 * ry + phase1) +
                                0.4 * std::sin(2.0 * std::numbers::pi * 3.1 * ry + phase2));
        for (int x = 0; x < w; ++x) {
            const double rx = static_cast<double>(x) / std::max(1, w - 1);
            const double drift = p.drift_amplitude * drift_sign * rx * (2.0 * ry - 1.0);
            const double noise = std::clamp(p.noise_sigma * normal(rng), -3.0 * p.noise_sigma, 3.0 * p.noise_sigma);
            out.matrix.current.at(x, y) = profile + drift + noise;
        }
    }
    if (!with_release) return out;

    const auto& g = p.geometry;
    const double amp = uniform(rng, p.amplitude_min, p.amplitude_max);
    const double sx_rise = uniform(rng, p.sigma_x_min, p.sigma_x_max);
    const double sx_decay = sx_rise * uniform(rng, 1.0, p.decay_ratio_max);
    const double sy = uniform(rng, p.sigma_y_min, p.sigma_y_max);
    PeakPosition peak;
    if (p.blob_center) {
        peak = *p.blob_center;
    } else {
        const double margin = center_margin(p);
        peak.y = static_cast<int>(std::floor(uniform(rng, g.common_begin + margin, g.common_end - margin)));
        peak.x = static_cast<int>(std::floor(uniform(rng, 0.2 * w, 0.8 * w)));
    }
    const bool lobe = unit(rng) < p.lobe_probability;
    const double lobe_y = g.top_rows > 0 ? uniform(rng, 0.3 * g.top_rows, 0.7 * g.top_rows) : 0.0;

    for (int y = 0; y < h; ++y) {
        const double dy = y - peak.y;
        const double gy = std::exp(-dy * dy / (2.0 * sy * sy));
        const double ly = lobe ? std::exp(-(y - lobe_y) * (y - lobe_y) / (2.0 * 0.5 * sy * 0.5 * sy)) : 0.0;
        for (int x = 0; x < w; ++x) {
            const double dx = x - peak.x;
            const double s = dx < 0 ? sx_rise : sx_decay;
            const double gx = std::exp(-dx * dx / (2.0 * s * s));
            out.matrix.current.at(x, y) += amp * gx * (gy - 0.5 * ly);
        }
    }
    out.peak = peak;
    out.interval = ReleaseInterval{std::max(0, static_cast<int>(std::floor(peak.x - 2.0 * sx_rise))),
                                   std::min(w - 1, static_cast<int>(std::ceil(peak.x + 2.0 * sx_decay)))};
    return out;
}

DatasetSummary generate_dataset(const std::filesystem::path& out_dir, const DatasetSpec& spec) {
    if (spec.experiments < 1) throw InvalidArgument("--experiments must be >= 1");
    if (spec.per_experiment < 1) throw InvalidArgument("--per-exp must be >= 1");
    spec.palette.validate();
    const SynthParams base = SynthParams{}.scaled(spec.scale);
    base.validate();

    struct Job {
        std::string sample_id;
        std::string experiment_id;
        bool release;
        std::uint64_t index;
        int experiment;
    };
    std::vector<Job> jobs;
    for (int e = 0; e < spec.experiments; ++e) {
        char exp_id[32];
        std::snprintf(exp_id, sizeof exp_id, "exp%02d", e + 1);
        for (int cls = 0; cls < 2; ++cls) {
            for (int i = 0; i < spec.per_experiment; ++i) {
                char sid[64];
                std::snprintf(sid, sizeof sid, "%s_%c%03d", exp_id, cls == 1 ? 'r' : 'n', i + 1);
                jobs.push_back({sid, exp_id, cls == 1, static_cast<std::uint64_t>(jobs.size()), e});
            }
        }
    }

    const char* backgrounds[] = {"A", "B", "C"};
    std::vector<std::array<SampleRecord, 3>> records(jobs.size());
    std::vector<std::vector<std::string>> warnings(jobs.size());
    parallel_for(jobs.size(), spec.workers, [&](std::size_t j) {
        const Job& job = jobs[j];
        SynthParams p = base;
        p.seed = spec.seed ^ job.index;
        p.experiment_seed = spec.seed ^ (0xD1B54A32D192ED03ull * static_cast<std::uint64_t>(job.experiment + 1));
        const SynthSample s = synthesize_sample(p, job.release);
        for (int b = 0; b < 3; ++b) {
            const FalseColorImage fc = false_color(background_subtract(s.matrix, backgrounds[b]), spec.palette);
            if (fc.warning) warnings[j].push_back(job.sample_id + "/" + backgrounds[b] + ": " + *fc.warning);
            const auto rel = std::filesystem::path("images") / backgrounds[b] / (job.sample_id + ".png");
            write_png(out_dir / rel, fc.image);
            records[j][b] = {job.sample_id, job.experiment_id, backgrounds[b],
                             job.release ? Label::Release : Label::NoRelease, out_dir / rel, s.peak, s.interval};
        }
    });

    DatasetSummary summary;
    summary.samples = jobs.size();
    summary.images = jobs.size() * 3;
    for (int b = 0; b < 3; ++b) {
        std::vector<SampleRecord> list;
        list.reserve(jobs.size());
        for (const auto& r : records) list.push_back(r[b]);
        const auto path = out_dir / ("manifest_" + std::string(backgrounds[b]) + ".csv");
        write_manifest(path, list);
        summary.manifests.push_back(path);
    }
    for (auto& w : warnings) summary.warnings.insert(summary.warnings.end(), w.begin(), w.end());

    const auto& g = base.geometry;
    const nlohmann::json meta = {
        {"width", base.width},
        {"height", base.height},
        {"scale", spec.scale},
        {"seed", spec.seed},
        {"experiments", spec.experiments},
        {"per_experiment", spec.per_experiment},
        {"geometry",
         {{"common_begin", g.common_begin},
          {"common_end", g.common_end},
          {"top_rows", g.top_rows},
          {"window", g.window},
          {"stride", g.stride}}},
    };
    write_text_file(out_dir / "synth.json", meta.dump(2) + "\n");
    return summary;
}

region::Geometry read_dataset_geometry(const std::filesystem::path& dataset_dir) {
    const auto path = dataset_dir / "synth.json";
    if (!std::filesystem::exists(path)) return {};
    std::ifstream in(path);
    try {
        const auto doc = nlohmann::json::parse(in);
        const auto& g = doc.at("geometry");
        region::Geometry out{g.at("common_begin").get<int>(), g.at("common_end").get<int>(), g.at("top_rows").get<int>(),
                             g.at("window").get<int>(), g.at("stride").get<int>()};
        out.validate();
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(path.string() + ": " + e.what());
    }
}

}  // namespace phasic::data
