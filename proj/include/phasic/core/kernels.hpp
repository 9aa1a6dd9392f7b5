#pragma once

#include "phasic/core/image.hpp"

#include <array>
#include <span>
#include <vector>

namespace phasic {

// ---- color -----------------------------------------------------------------

/// Luminance as the plain channel mean (r+g+b)/3. Single-channel input passes through.
ImageMatrix to_grayscale(const ImageMatrix& img);

/// CIE L*a*b* (D65, sRGB transfer) planes of a 3-channel image. L in [0,100].
std::array<Matrix, 3> rgb_to_lab(const ImageMatrix& img);

// ---- resampling ------------------------------------------------------------

/// Bilinear resize with pixel-center alignment and edge clamping.
Matrix resize_bilinear(const Matrix& src, int width, int height);
ImageMatrix resize_bilinear(const ImageMatrix& src, int width, int height);

/// Level 0 is the input; level k is the 5-tap binomial blur of level k-1
/// subsampled by 2 (dims ceil(n/2)). Requires levels-1 <= floor(log2(min dim)).
std::vector<Matrix> gaussian_pyramid(const Matrix& img, int levels);
std::vector<ImageMatrix> gaussian_pyramid(const ImageMatrix& img, int levels);

/// One pyramid step: binomial blur then keep even rows/columns.
Matrix pyr_down(const Matrix& src);

// ---- filtering ---------------------------------------------------------------

/// Half-sample symmetric reflection of an index into [0, n).
int mirror_index(int i, int n) noexcept;

/// Separable correlation with an odd-length kernel, mirror edges.
Matrix convolve_separable(const Matrix& src, std::span<const double> kx, std::span<const double> ky);

/// Dense 2-D correlation with an odd-sized kernel, mirror edges.
Matrix convolve2d(const Matrix& src, const Matrix& kernel);

/// Normalized Gaussian taps, radius ceil(3 sigma).
std::vector<double> gaussian_kernel(double sigma);

Matrix gaussian_blur(const Matrix& src, double sigma);

/// 3x3 local mean, mirror edges.
Matrix box_mean3(const Matrix& src);

}  // namespace phasic
