#include "phasic/data/fscv.hpp"

#include "phasic/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace phasic::data {

double background_anchor_seconds(std::string_view background) {
    if (background == "A") return 0.5;
    if (background == "B") return 10.0;
    if (background == "C") return 19.5;
    throw InvalidArgument("background '" + std::string(background) + "' is not A, B or C");
}

int anchor_column(double seconds, int cols) {
    if (!(seconds >= 0.0 && seconds <= kRecordingSeconds)) {
        throw InvalidArgument("anchor time " + std::to_string(seconds) + " s is outside [0, 20]");
    }
    if (cols < 1) throw InvalidArgument("anchor_column: matrix has no columns");
    return static_cast<int>(std::lround(seconds / kRecordingSeconds * (cols - 1)));
}

FscvMatrix background_subtract(const FscvMatrix& m, double anchor_seconds) {
    const int a = anchor_column(anchor_seconds, m.cols());
    FscvMatrix out = m;
    for (int y = 0; y < m.rows(); ++y) {
        const double ref = m.current.at(a, y);
        for (int x = 0; x < m.cols(); ++x) out.current.at(x, y) = m.current.at(x, y) - ref;
    }
    return out;
}

FscvMatrix background_subtract(const FscvMatrix& m, std::string_view background) {
    return background_subtract(m, background_anchor_seconds(background));
}

void Palette::validate() const {
    if (stops.size() < 2) throw InvalidArgument("palette needs at least two stops");
    if (stops.front().position != 0.0 || stops.back().position != 1.0) {
        throw InvalidArgument("palette stops must start at 0 and end at 1");
    }
    for (std::size_t i = 0; i < stops.size(); ++i) {
        if (i > 0 && !(stops[i].position > stops[i - 1].position)) {
            throw InvalidArgument("palette stop positions must increase");
        }
        for (double c : stops[i].rgb) {
            if (!(c >= 0.0 && c <= 1.0)) throw InvalidArgument("palette colors must lie in [0,1]");
        }
    }
}

std::array<double, 3> Palette::at(double t) const {
    t = std::clamp(t, 0.0, 1.0);
    if (t <= stops.front().position) return stops.front().rgb;
    for (std::size_t i = 1; i < stops.size(); ++i) {
        if (t <= stops[i].position) {
            const auto& a = stops[i - 1];
            const auto& b = stops[i];
            if (t == b.position) return b.rgb;
            const double u = (t - a.position) / (b.position - a.position);
            return {a.rgb[0] + u * (b.rgb[0] - a.rgb[0]), a.rgb[1] + u * (b.rgb[1] - a.rgb[1]),
                    a.rgb[2] + u * (b.rgb[2] - a.rgb[2])};
        }
    }
    return stops.back().rgb;
}

Palette default_palette() {
    return {{{0.0, {0.0, 0.39, 0.0}},
             {0.25, {0.0, 0.0, 1.0}},
             {0.5, {0.0, 0.0, 0.0}},
             {0.75, {1.0, 1.0, 0.0}},
             {1.0, {0.55, 0.0, 0.0}}}};
}

FalseColorImage false_color(const FscvMatrix& m, const Palette& palette) {
    palette.validate();
    const int w = m.cols(), h = m.rows();
    const double lo = m.current.min(), hi = m.current.max();
    FalseColorImage out{ImageMatrix(w, h, 3), std::nullopt};
    const bool flat = !(hi - lo > 0.0);
    if (flat) out.warning = "constant matrix mapped to the palette midpoint";
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double t = flat ? 0.5 : (m.current.at(x, y) - lo) / (hi - lo);
            const auto rgb = palette.at(t);
            for (int c = 0; c < 3; ++c) out.image.at(x, y, c) = rgb[c];
        }
    }
    return out;
}

}  // namespace phasic::data
