#include "phasic/core/transforms.hpp"

#include "phasic/core/error.hpp"
#include "phasic/core/kernels.hpp"

#include <opencv2/core.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace phasic {

namespace {

ComplexMatrix run_dft(const ComplexMatrix& m, bool inverse) {
    if (m.width < 1 || m.height < 1) throw InvalidArgument("fft2: dimensions must be >= 1");
    // cv::Mat wraps our interleaved complex<double> storage without copying.
    cv::Mat in(m.height, m.width, CV_64FC2, const_cast<std::complex<double>*>(m.data.data()));
    ComplexMatrix out(m.width, m.height);
    cv::Mat dst(m.height, m.width, CV_64FC2, out.data.data());
    const int flags = inverse ? (cv::DFT_INVERSE | cv::DFT_SCALE | cv::DFT_COMPLEX_OUTPUT) : cv::DFT_COMPLEX_OUTPUT;
    cv::dft(in, dst, flags);
    if (dst.data != reinterpret_cast<uchar*>(out.data.data())) {
        throw Error("fft2: unexpected reallocation of output buffer");
    }
    return out;
}

}  // namespace

ComplexMatrix fft2(const Matrix& m) {
    ComplexMatrix c(m.width(), m.height());
    for (std::size_t i = 0; i < m.size(); ++i) c.data[i] = {m.data()[i], 0.0};
    return run_dft(c, false);
}

ComplexMatrix fft2(const ComplexMatrix& m) { return run_dft(m, false); }
ComplexMatrix ifft2(const ComplexMatrix& m) { return run_dft(m, true); }

// ---- wavelets ----------------------------------------------------------------

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

const std::vector<double>& haar_taps() {
    static const std::vector<double> taps{kInvSqrt2, kInvSqrt2};
    return taps;
}

const std::vector<double>& db2_taps() {
    static const std::vector<double> taps = [] {
        const double s3 = std::sqrt(3.0);
        const double d = 4.0 * std::sqrt(2.0);
        return std::vector<double>{(1 + s3) / d, (3 + s3) / d, (3 - s3) / d, (1 - s3) / d};
    }();
    return taps;
}

const std::vector<double>& db4_taps() {
    static const std::vector<double> taps{
        0.23037781330885523,  0.7148465705525415,   0.6308807679295904,   -0.02798376941698385,
        -0.18703481171888114, 0.030841381835986965, 0.032883011666982945, -0.010597401784997278};
    return taps;
}

// g[n] = (-1)^n h[L-1-n]
std::vector<double> highpass_of(std::span<const double> h) {
    const std::size_t n = h.size();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = (i % 2 == 0 ? 1.0 : -1.0) * h[n - 1 - i];
    return g;
}

void analysis(std::span<const double> x, std::span<const double> h, std::span<const double> g,
              std::span<double> approx, std::span<double> detail) {
    const int n = static_cast<int>(x.size());
    const int half = n / 2;
    const int taps = static_cast<int>(h.size());
    for (int k = 0; k < half; ++k) {
        double a = 0.0, d = 0.0;
        for (int t = 0; t < taps; ++t) {
            const double v = x[(2 * k + t) % n];
            a += h[t] * v;
            d += g[t] * v;
        }
        approx[k] = a;
        detail[k] = d;
    }
}

void synthesis(std::span<const double> approx, std::span<const double> detail, std::span<const double> h,
               std::span<const double> g, std::span<double> x) {
    const int n = static_cast<int>(x.size());
    const int half = n / 2;
    const int taps = static_cast<int>(h.size());
    std::fill(x.begin(), x.end(), 0.0);
    for (int k = 0; k < half; ++k) {
        for (int t = 0; t < taps; ++t) {
            x[(2 * k + t) % n] += h[t] * approx[k] + g[t] * detail[k];
        }
    }
}

struct FilterPair {
    std::span<const double> h;
    std::vector<double> g;
};

FilterPair filters(WaveletFamily family) {
    auto h = wavelet_lowpass(family);
    return {h, highpass_of(h)};
}

// One 2-D level on the w x h top-left block of `m` (both even). Result layout:
// [LL | HL]
// [LH | HH]   where the first letter is the filter along x.
void forward_level(Matrix& m, int w, int h, const FilterPair& f) {
    std::vector<double> line, lo, hi;
    line.resize(std::max(w, h));
    lo.resize(std::max(w, h) / 2);
    hi.resize(std::max(w, h) / 2);
    for (int y = 0; y < h; ++y) {
        auto r = m.row(y);
        std::copy_n(r.begin(), w, line.begin());
        analysis({line.data(), static_cast<std::size_t>(w)}, f.h, f.g, {lo.data(), static_cast<std::size_t>(w / 2)},
                 {hi.data(), static_cast<std::size_t>(w / 2)});
        std::copy_n(lo.begin(), w / 2, r.begin());
        std::copy_n(hi.begin(), w / 2, r.begin() + w / 2);
    }
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) line[y] = m.at(x, y);
        analysis({line.data(), static_cast<std::size_t>(h)}, f.h, f.g, {lo.data(), static_cast<std::size_t>(h / 2)},
                 {hi.data(), static_cast<std::size_t>(h / 2)});
        for (int y = 0; y < h / 2; ++y) {
            m.at(x, y) = lo[y];
            m.at(x, y + h / 2) = hi[y];
        }
    }
}

void inverse_level(Matrix& m, int w, int h, const FilterPair& f) {
    std::vector<double> line(std::max(w, h)), lo(std::max(w, h) / 2), hi(std::max(w, h) / 2);
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h / 2; ++y) {
            lo[y] = m.at(x, y);
            hi[y] = m.at(x, y + h / 2);
        }
        synthesis({lo.data(), static_cast<std::size_t>(h / 2)}, {hi.data(), static_cast<std::size_t>(h / 2)}, f.h, f.g,
                  {line.data(), static_cast<std::size_t>(h)});
        for (int y = 0; y < h; ++y) m.at(x, y) = line[y];
    }
    for (int y = 0; y < h; ++y) {
        auto r = m.row(y);
        std::copy_n(r.begin(), w / 2, lo.begin());
        std::copy_n(r.begin() + w / 2, w / 2, hi.begin());
        synthesis({lo.data(), static_cast<std::size_t>(w / 2)}, {hi.data(), static_cast<std::size_t>(w / 2)}, f.h, f.g,
                  {line.data(), static_cast<std::size_t>(w)});
        std::copy_n(line.begin(), w, r.begin());
    }
}

Matrix crop(const Matrix& m, int x0, int y0, int w, int h) {
    Matrix out(w, h);
    for (int y = 0; y < h; ++y) {
        auto src = m.row(y0 + y);
        std::copy_n(src.begin() + x0, w, out.row(y).begin());
    }
    return out;
}

void paste(Matrix& dst, const Matrix& src, int x0, int y0) {
    for (int y = 0; y < src.height(); ++y) {
        auto s = src.row(y);
        std::copy(s.begin(), s.end(), dst.row(y0 + y).begin() + x0);
    }
}

}  // namespace

WaveletFamily parse_wavelet_family(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "haar" || lower == "db1") return WaveletFamily::Haar;
    if (lower == "db2") return WaveletFamily::Db2;
    if (lower == "db4") return WaveletFamily::Db4;
    throw InvalidArgument("unsupported wavelet family: '" + std::string(name) + "'");
}

std::string_view wavelet_family_name(WaveletFamily family) {
    switch (family) {
        case WaveletFamily::Haar: return "haar";
        case WaveletFamily::Db2: return "db2";
        case WaveletFamily::Db4: return "db4";
    }
    return "unknown";
}

std::span<const double> wavelet_lowpass(WaveletFamily family) {
    switch (family) {
        case WaveletFamily::Haar: return haar_taps();
        case WaveletFamily::Db2: return db2_taps();
        case WaveletFamily::Db4: return db4_taps();
    }
    throw InvalidArgument("unsupported wavelet family");
}

Dwt1Result dwt1(std::span<const double> signal, WaveletFamily family) {
    if (signal.empty() || signal.size() % 2 != 0) throw InvalidArgument("dwt1: signal length must be even and non-zero");
    const auto f = filters(family);
    Dwt1Result out{std::vector<double>(signal.size() / 2), std::vector<double>(signal.size() / 2)};
    analysis(signal, f.h, f.g, out.approx, out.detail);
    return out;
}

std::vector<double> idwt1(std::span<const double> approx, std::span<const double> detail, WaveletFamily family) {
    if (approx.size() != detail.size() || approx.empty()) throw InvalidArgument("idwt1: band lengths must match");
    const auto f = filters(family);
    std::vector<double> x(approx.size() * 2);
    synthesis(approx, detail, f.h, f.g, x);
    return x;
}

WaveletPyramid dwt2(const Matrix& m, WaveletFamily family, int levels) {
    if (levels < 1) throw InvalidArgument("dwt2: levels must be >= 1");
    if (levels > 20) throw InvalidArgument("dwt2: too many levels");
    const int block = 1 << levels;
    WaveletPyramid pyr;
    pyr.family = family;
    pyr.width = m.width();
    pyr.height = m.height();
    pyr.padded_width = (m.width() + block - 1) / block * block;
    pyr.padded_height = (m.height() + block - 1) / block * block;

    Matrix work(pyr.padded_width, pyr.padded_height);
    for (int y = 0; y < pyr.padded_height; ++y) {
        auto src = m.row(mirror_index(y, m.height()));
        auto dst = work.row(y);
        for (int x = 0; x < pyr.padded_width; ++x) dst[x] = src[mirror_index(x, m.width())];
    }

    const auto f = filters(family);
    int w = pyr.padded_width;
    int h = pyr.padded_height;
    for (int level = 0; level < levels; ++level) {
        forward_level(work, w, h, f);
        const int hw = w / 2, hh = h / 2;
        pyr.details.push_back({crop(work, 0, hh, hw, hh), crop(work, hw, 0, hw, hh), crop(work, hw, hh, hw, hh)});
        w = hw;
        h = hh;
    }
    pyr.approx = crop(work, 0, 0, w, h);
    return pyr;
}

Matrix idwt2(const WaveletPyramid& pyr) {
    if (pyr.details.empty()) throw InvalidArgument("idwt2: empty pyramid");
    const auto f = filters(pyr.family);
    Matrix work(pyr.padded_width, pyr.padded_height);
    paste(work, pyr.approx, 0, 0);
    for (int level = pyr.levels() - 1; level >= 0; --level) {
        const auto& d = pyr.details[level];
        const int hw = d.hh.width(), hh = d.hh.height();
        paste(work, d.lh, 0, hh);
        paste(work, d.hl, hw, 0);
        paste(work, d.hh, hw, hh);
        inverse_level(work, 2 * hw, 2 * hh, f);
    }
    return crop(work, 0, 0, pyr.width, pyr.height);
}

}  // namespace phasic
