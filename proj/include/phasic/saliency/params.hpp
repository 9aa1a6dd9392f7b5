#pragma once

#include "phasic/core/transforms.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace phasic::saliency {

enum class Method { SimpSal, Gbvs, CoSaliency, SpectralResidual, Wavelet };

inline constexpr std::array<Method, 5> kAllMethods{Method::SimpSal, Method::Gbvs, Method::CoSaliency,
                                                   Method::SpectralResidual, Method::Wavelet};

/// Short ids used in file names: simpsal, gbvs, cos, spe, wavelet.
std::string_view method_id(Method m);
Method parse_method(std::string_view id);

struct SimpSalParams {
    /// The input is resampled so its shorter side has this length; 256 leaves
    /// room for the 9-level pyramid that center-surround scale 8 needs.
    int working_min_dim = 256;
    /// Local maxima below this fraction of the global maximum are ignored by N(.).
    double local_max_floor = 0.1;
};

struct GbvsParams {
    int lattice_divisor = 4;
    int lattice_cap = 48;
    /// Falloff sigma as a fraction of the lattice width.
    double sigma_fraction = 1.0 / 8.0;
    double log_floor = 1e-4;
    double tolerance = 1e-7;
    int max_iterations = 10000;
};

struct CoSaliencyParams {
    int k_single = 6;
    int k_multi = 10;
    std::uint64_t seed = 0;
    int max_iterations = 50;
    /// Images are clustered at a resolution whose longer side is at most this.
    int working_max_dim = 128;
    /// Spatial-cue falloff in coordinates normalized to [0,1].
    double spatial_sigma = 0.3;
};

struct SpectralResidualParams {
    int working_min_dim = 64;
    double log_epsilon = 1e-8;
    double blur_sigma = 2.5;
};

struct WaveletSaliencyParams {
    WaveletFamily family = WaveletFamily::Db4;
    int levels = 5;
    /// When set, levels beyond the image capacity are clamped instead of rejected.
    bool clamp_levels = true;
    double ridge = 1e-6;
    double blur_sigma = 2.0;
};

struct SaliencyParams {
    double mask_threshold = 0.5;
    /// Per-method override of mask_threshold, indexed by Method.
    std::array<std::optional<double>, 5> method_threshold{};
    /// TH of the row/column crop as a fraction of the line length.
    double roi_line_fraction = 0.01;

    SimpSalParams simpsal;
    GbvsParams gbvs;
    CoSaliencyParams cosaliency;
    SpectralResidualParams spectral;
    WaveletSaliencyParams wavelet;

    double threshold_for(Method m) const {
        const auto& t = method_threshold[static_cast<std::size_t>(m)];
        return t ? *t : mask_threshold;
    }
};

}  // namespace phasic::saliency
