#pragma once

#include "phasic/core/image.hpp"

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace phasic {

/// Dense complex raster, row-major.
struct ComplexMatrix {
    int width = 0;
    int height = 0;
    std::vector<std::complex<double>> data;

    ComplexMatrix() = default;
    ComplexMatrix(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h) {}

    std::complex<double>& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    const std::complex<double>& at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Unnormalized forward DFT; ifft2 carries the 1/(w*h) factor.
ComplexMatrix fft2(const Matrix& m);
ComplexMatrix fft2(const ComplexMatrix& m);
ComplexMatrix ifft2(const ComplexMatrix& m);

enum class WaveletFamily { Haar, Db2, Db4 };

/// Accepts "haar", "db1", "db2", "db4" (case-insensitive). Daubechies names follow
/// the vanishing-moment convention, so db4 has 8 taps.
WaveletFamily parse_wavelet_family(std::string_view name);
std::string_view wavelet_family_name(WaveletFamily family);

/// Orthonormal scaling (low-pass) filter of the family.
std::span<const double> wavelet_lowpass(WaveletFamily family);

struct Dwt1Result {
    std::vector<double> approx;
    std::vector<double> detail;
};

/// Single-level periodized 1-D DWT; signal length must be even.
Dwt1Result dwt1(std::span<const double> signal, WaveletFamily family);
std::vector<double> idwt1(std::span<const double> approx, std::span<const double> detail, WaveletFamily family);

/// Detail bands of one decomposition level. lh: low-pass along x, high-pass
/// along y (horizontal edges); hl: the transpose; hh: diagonal.
struct WaveletDetail {
    Matrix lh;
    Matrix hl;
    Matrix hh;
};

/// Coefficient pyramid. details[0] is the finest level.
struct WaveletPyramid {
    WaveletFamily family = WaveletFamily::Db4;
    int width = 0;          ///< original input width
    int height = 0;         ///< original input height
    int padded_width = 0;   ///< after mirror padding to a multiple of 2^levels
    int padded_height = 0;
    Matrix approx;
    std::vector<WaveletDetail> details;

    int levels() const noexcept { return static_cast<int>(details.size()); }
};

/// Mirror-pads to a multiple of 2^levels, then applies the periodized
/// orthonormal transform level by level. Exactly invertible with idwt2.
WaveletPyramid dwt2(const Matrix& m, WaveletFamily family, int levels);
Matrix idwt2(const WaveletPyramid& pyramid);

}  // namespace phasic
