#include "phasic/core/kernels.hpp"

#include "phasic/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace phasic {

ImageMatrix to_grayscale(const ImageMatrix& img) {
    if (img.channels() == 1) return img;
    const std::size_t n = img.plane_size();
    std::vector<double> out(n);
    auto r = img.plane_view(0);
    auto g = img.plane_view(1);
    auto b = img.plane_view(2);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::clamp((r[i] + g[i] + b[i]) / 3.0, 0.0, 1.0);
    return ImageMatrix(img.width(), img.height(), 1, std::move(out));
}

std::array<Matrix, 3> rgb_to_lab(const ImageMatrix& img) {
    if (img.channels() != 3) throw InvalidArgument("rgb_to_lab: expected 3 channels");
    const int w = img.width();
    const int h = img.height();
    std::array<Matrix, 3> lab{Matrix(w, h), Matrix(w, h), Matrix(w, h)};
    auto linear = [](double c) { return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4); };
    auto f = [](double t) {
        constexpr double delta = 6.0 / 29.0;
        return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
    };
    constexpr double xn = 0.95047, yn = 1.0, zn = 1.08883;
    auto rp = img.plane_view(0);
    auto gp = img.plane_view(1);
    auto bp = img.plane_view(2);
    for (std::size_t i = 0; i < img.plane_size(); ++i) {
        const double r = linear(rp[i]), g = linear(gp[i]), b = linear(bp[i]);
        const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
        const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
        const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
        const double fx = f(x / xn), fy = f(y / yn), fz = f(z / zn);
        lab[0].data()[i] = 116.0 * fy - 16.0;
        lab[1].data()[i] = 500.0 * (fx - fy);
        lab[2].data()[i] = 200.0 * (fy - fz);
    }
    return lab;
}

Matrix resize_bilinear(const Matrix& src, int width, int height) {
    if (width < 1 || height < 1) {
        throw InvalidArgument("resize_bilinear: target dimensions must be >= 1, got " +
                              std::to_string(width) + "x" + std::to_string(height));
    }
    if (width == src.width() && height == src.height()) return src;

    struct Tap {
        int i0, i1;
        double t;
    };
    auto taps = [](int src_n, int dst_n) {
        std::vector<Tap> out(dst_n);
        const double scale = static_cast<double>(src_n) / dst_n;
        for (int i = 0; i < dst_n; ++i) {
            double s = (i + 0.5) * scale - 0.5;
            s = std::clamp(s, 0.0, static_cast<double>(src_n - 1));
            const int i0 = static_cast<int>(std::floor(s));
            const int i1 = std::min(i0 + 1, src_n - 1);
            out[i] = {i0, i1, s - i0};
        }
        return out;
    };
    const auto tx = taps(src.width(), width);
    const auto ty = taps(src.height(), height);

    Matrix out(width, height);
    std::vector<double> top(width), bottom(width);
    for (int y = 0; y < height; ++y) {
        auto r0 = src.row(ty[y].i0);
        auto r1 = src.row(ty[y].i1);
        for (int x = 0; x < width; ++x) {
            const auto& t = tx[x];
            top[x] = r0[t.i0] + t.t * (r0[t.i1] - r0[t.i0]);
            bottom[x] = r1[t.i0] + t.t * (r1[t.i1] - r1[t.i0]);
        }
        auto dst = out.row(y);
        for (int x = 0; x < width; ++x) dst[x] = top[x] + ty[y].t * (bottom[x] - top[x]);
    }
    return out;
}

ImageMatrix resize_bilinear(const ImageMatrix& src, int width, int height) {
    if (width < 1 || height < 1) {
        throw InvalidArgument("resize_bilinear: target dimensions must be >= 1, got " +
                              std::to_string(width) + "x" + std::to_string(height));
    }
    if (width == src.width() && height == src.height()) return src;
    std::vector<Matrix> planes;
    for (int c = 0; c < src.channels(); ++c) {
        Matrix p = resize_bilinear(src.plane(c), width, height);
        for (double& v : p.data()) v = std::clamp(v, 0.0, 1.0);
        planes.push_back(std::move(p));
    }
    return ImageMatrix::from_planes(planes);
}

int mirror_index(int i, int n) noexcept {
    if (n == 1) return 0;
    const int period = 2 * n;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - 1 - i;
}

Matrix convolve_separable(const Matrix& src, std::span<const double> kx, std::span<const double> ky) {
    if (kx.size() % 2 == 0 || ky.size() % 2 == 0) throw InvalidArgument("convolve_separable: kernels must have odd length");
    const int w = src.width();
    const int h = src.height();
    const int rx = static_cast<int>(kx.size() / 2);
    const int ry = static_cast<int>(ky.size() / 2);

    Matrix tmp(w, h);
    std::vector<double> padded(w + 2 * rx);
    for (int y = 0; y < h; ++y) {
        auto in = src.row(y);
        for (int i = 0; i < w + 2 * rx; ++i) padded[i] = in[mirror_index(i - rx, w)];
        auto dst = tmp.row(y);
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (std::size_t k = 0; k < kx.size(); ++k) acc += kx[k] * padded[x + k];
            dst[x] = acc;
        }
    }

    Matrix out(w, h);
    for (int y = 0; y < h; ++y) {
        auto dst = out.row(y);
        for (std::size_t k = 0; k < ky.size(); ++k) {
            auto in = tmp.row(mirror_index(y + static_cast<int>(k) - ry, h));
            const double wk = ky[k];
            for (int x = 0; x < w; ++x) dst[x] += wk * in[x];
        }
    }
    return out;
}

Matrix convolve2d(const Matrix& src, const Matrix& kernel) {
    if (kernel.width() % 2 == 0 || kernel.height() % 2 == 0) throw InvalidArgument("convolve2d: kernel must have odd size");
    const int w = src.width();
    const int h = src.height();
    const int rx = kernel.width() / 2;
    const int ry = kernel.height() / 2;
    std::vector<int> xs(w + 2 * rx);
    for (int i = 0; i < w + 2 * rx; ++i) xs[i] = mirror_index(i - rx, w);
    Matrix out(w, h);
    for (int y = 0; y < h; ++y) {
        auto dst = out.row(y);
        for (int ky = 0; ky < kernel.height(); ++ky) {
            auto in = src.row(mirror_index(y + ky - ry, h));
            auto krow = kernel.row(ky);
            for (int kx = 0; kx < kernel.width(); ++kx) {
                const double wk = krow[kx];
                if (wk == 0.0) continue;
                for (int x = 0; x < w; ++x) dst[x] += wk * in[xs[x + kx]];
            }
        }
    }
    return out;
}

std::vector<double> gaussian_kernel(double sigma) {
    if (!(sigma > 0.0)) throw InvalidArgument("gaussian_kernel: sigma must be positive");
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> k(2 * radius + 1);
    double total = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
        total += k[i + radius];
    }
    for (double& v : k) v /= total;
    return k;
}

Matrix gaussian_blur(const Matrix& src, double sigma) {
    const auto k = gaussian_kernel(sigma);
    return convolve_separable(src, k, k);
}

Matrix box_mean3(const Matrix& src) {
    static constexpr double k[3] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    return convolve_separable(src, k, k);
}

Matrix pyr_down(const Matrix& src) {
    static constexpr double k[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
    const Matrix blurred = convolve_separable(src, k, k);
    const int w = (src.width() + 1) / 2;
    const int h = (src.height() + 1) / 2;
    Matrix out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) out.at(x, y) = blurred.at(2 * x, 2 * y);
    }
    return out;
}

namespace {

void check_pyramid_levels(int width, int height, int levels) {
    if (levels < 1) throw InvalidArgument("gaussian_pyramid: levels must be >= 1");
    const int capacity = static_cast<int>(std::floor(std::log2(std::min(width, height))));
    if (levels - 1 > capacity) {
        throw InvalidArgument("gaussian_pyramid: " + std::to_string(levels) + " levels exceed capacity of a " +
                              std::to_string(width) + "x" + std::to_string(height) + " image");
    }
}

}  // namespace

std::vector<Matrix> gaussian_pyramid(const Matrix& img, int levels) {
    check_pyramid_levels(img.width(), img.height(), levels);
    std::vector<Matrix> out;
    out.reserve(levels);
    out.push_back(img);
    for (int k = 1; k < levels; ++k) out.push_back(pyr_down(out.back()));
    return out;
}

std::vector<ImageMatrix> gaussian_pyramid(const ImageMatrix& img, int levels) {
    check_pyramid_levels(img.width(), img.height(), levels);
    std::vector<std::vector<Matrix>> per_channel;
    for (int c = 0; c < img.channels(); ++c) per_channel.push_back(gaussian_pyramid(img.plane(c), levels));
    std::vector<ImageMatrix> out;
    for (int k = 0; k < levels; ++k) {
        std::vector<Matrix> planes;
        for (auto& pc : per_channel) {
            for (double& v : pc[k].data()) v = std::clamp(v, 0.0, 1.0);
            planes.push_back(pc[k]);
        }
        out.push_back(ImageMatrix::from_planes(planes));
    }
    return out;
}

}  // namespace phasic
