#include "phasic/saliency/spectral_residual.hpp"

#include "phasic/core/error.hpp"
#include "phasic/core/kernels.hpp"
#include "phasic/core/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace phasic::saliency {

namespace {

constexpr double kDegenerate = 1e-12;

}  // namespace

Matrix spectral_residual_raw(const Matrix& gray, const SpectralResidualParams& params) {
    const ComplexMatrix spectrum = fft2(gray);
    const int w = spectrum.width, h = spectrum.height;
    Matrix log_amp(w, h), phase(w, h);
    for (std::size_t i = 0; i < spectrum.data.size(); ++i) {
        log_amp.data()[i] = std::log(std::abs(spectrum.data[i]) + params.log_epsilon);
        phase.data()[i] = std::arg(spectrum.data[i]);
    }
    const Matrix smooth = box_mean3(log_amp);
    ComplexMatrix residual(w, h);
    for (std::size_t i = 0; i < residual.data.size(); ++i) {
        residual.data[i] = std::polar(std::exp(log_amp.data()[i] - smooth.data()[i]), phase.data()[i]);
    }
    const ComplexMatrix back = ifft2(residual);
    Matrix energy(w, h);
    for (std::size_t i = 0; i < back.data.size(); ++i) energy.data()[i] = std::norm(back.data[i]);
    return gaussian_blur(energy, params.blur_sigma);
}

SaliencyMap spectral_residual(const ImageMatrix& img, const SpectralResidualParams& params) {
    if (img.width() < 8 || img.height() < 8) {
        throw InvalidArgument("spectral_residual: image " + std::to_string(img.width()) + "x" +
                              std::to_string(img.height()) + " is smaller than 8x8");
    }
    const Matrix gray = to_grayscale(img).plane(0);
    const double scale = static_cast<double>(params.working_min_dim) / std::min(img.width(), img.height());
    const int ww = std::max(1, static_cast<int>(std::lround(img.width() * scale)));
    const int wh = std::max(1, static_cast<int>(std::lround(img.height() * scale)));
    const Matrix work = resize_bilinear(gray, ww, wh);

    // A flat input has no residual structure; round-off in its spectrum would
    // otherwise be amplified into noise.
    if (work.max() - work.min() < kDegenerate) return SaliencyMap(Matrix(img.width(), img.height(), 0.0));

    const Matrix raw = spectral_residual_raw(work, params);
    if (raw.max() < kDegenerate) return SaliencyMap(Matrix(img.width(), img.height(), 0.0));
    const SaliencyMap small = SaliencyMap::normalized(raw);
    return SaliencyMap::normalized(resize_bilinear(small.values(), img.width(), img.height()));
}

}  // namespace phasic::saliency
