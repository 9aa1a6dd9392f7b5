#pragma once

#include "phasic/core/image.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phasic::data {

/// Current over (applied potential, cycle): rows are potential samples,
/// columns are cycles spread linearly over a 20 s recording.
struct FscvMatrix {
    Matrix current;

    int rows() const { return current.height(); }
    int cols() const { return current.width(); }
};

inline constexpr double kRecordingSeconds = 20.0;

/// Anchor time of a background variant: A 0.5 s, B 10 s, C 19.5 s.
double background_anchor_seconds(std::string_view background);

/// Nearest cycle index of a time in [0, 20] s.
int anchor_column(double seconds, int cols);

/// Subtracts the anchor column from every column; the anchor column becomes 0.
FscvMatrix background_subtract(const FscvMatrix& m, double anchor_seconds);
FscvMatrix background_subtract(const FscvMatrix& m, std::string_view background);

struct PaletteStop {
    double position = 0.0;  ///< in [0,1], strictly increasing across stops
    std::array<double, 3> rgb{};
};

struct Palette {
    std::vector<PaletteStop> stops;

    /// Throws InvalidArgument unless there are >= 2 stops with increasing
    /// positions from 0 to 1 and colors in [0,1].
    void validate() const;
    std::array<double, 3> at(double t) const;
};

/// Deep green, blue, black, yellow, dark red.
Palette default_palette();

struct FalseColorImage {
    ImageMatrix image;
    std::optional<std::string> warning;
};

/// Min-max normalizes the matrix, then maps each value through the palette.
/// A constant matrix maps to the palette midpoint with a warning.
FalseColorImage false_color(const FscvMatrix& m, const Palette& palette = default_palette());

}  // namespace phasic::data
