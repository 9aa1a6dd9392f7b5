#include <doctest.h>

#include "phasic/core/error.hpp"
#include "phasic/core/image.hpp"
#include "phasic/core/kernels.hpp"
#include "phasic/core/transforms.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace phasic;

namespace {

Matrix random_matrix(int w, int h, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Matrix m(w, h);
    for (double& v : m.data()) v = u(rng);
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

// Naive DFT, independent of the library's FFT path.
std::complex<double> naive_dft(const Matrix& m, int u, int v) {
    std::complex<double> acc = 0.0;
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            const double phase = -2.0 * std::numbers::pi * (double(u) * x / m.width() + double(v) * y / m.height());
            acc += m.at(x, y) * std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    return acc;
}

}  // namespace

TEST_CASE("image types enforce their invariants") {
    CHECK_THROWS_AS(ImageMatrix(0, 3, 1), InvalidArgument);
    CHECK_THROWS_AS(ImageMatrix(2, 2, 2), InvalidArgument);
    CHECK_THROWS_AS(ImageMatrix(1, 1, 1, std::vector<double>{1.5}), InvalidArgument);
    CHECK_THROWS_AS(ImageMatrix(1, 1, 1, std::vector<double>{std::nan("")}), InvalidArgument);
    CHECK_THROWS_AS(BinaryMask(1, 1, std::vector<std::uint8_t>{2}), InvalidArgument);
    CHECK_THROWS_AS(SaliencyMap(Matrix(1, 1, -0.1)), InvalidArgument);

    Matrix raw(3, 1, std::vector<double>{2.0, 4.0, 6.0});
    auto map = SaliencyMap::normalized(raw);
    CHECK(map.values().max() == 1.0);
    CHECK(map.values().min() == 0.0);
    CHECK(map.at(1, 0) == doctest::Approx(0.5));
    CHECK(SaliencyMap::normalized(Matrix(4, 4, 0.7)).all_zero());
}

TEST_CASE("to_grayscale") {
    SUBCASE("white stays white") {
        auto g = to_grayscale(ImageMatrix(3, 2, 3, 1.0));
        CHECK(g.channels() == 1);
        for (double v : g.data()) CHECK(v == 1.0);
    }
    SUBCASE("pure red is one third") {
        ImageMatrix img(1, 1, 3, std::vector<double>{1.0, 0.0, 0.0});
        CHECK(to_grayscale(img).at(0, 0) == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("per-pixel mean oracle") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> data(4 * 4 * 3);
        for (double& v : data) v = u(rng);
        ImageMatrix img(4, 4, 3, data);
        auto g = to_grayscale(img);
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 4; ++x)
                CHECK(g.at(x, y) == doctest::Approx((img.at(x, y, 0) + img.at(x, y, 1) + img.at(x, y, 2)) / 3.0).epsilon(1e-15));
    }
    SUBCASE("single channel passes through") {
        ImageMatrix img(2, 2, 1, 0.25);
        CHECK(to_grayscale(img) == img);
    }
}

TEST_CASE("rgb_to_lab reference points") {
    auto white = rgb_to_lab(ImageMatrix(1, 1, 3, 1.0));
    CHECK(white[0].at(0, 0) == doctest::Approx(100.0).epsilon(1e-4));
    CHECK(std::abs(white[1].at(0, 0)) < 0.01);
    CHECK(std::abs(white[2].at(0, 0)) < 0.01);
    auto red = rgb_to_lab(ImageMatrix(1, 1, 3, std::vector<double>{1.0, 0.0, 0.0}));
    // sRGB red: L*=53.24, a*=80.09, b*=67.20
    CHECK(red[0].at(0, 0) == doctest::Approx(53.24).epsilon(1e-3));
    CHECK(red[1].at(0, 0) == doctest::Approx(80.09).epsilon(1e-3));
    CHECK(red[2].at(0, 0) == doctest::Approx(67.20).epsilon(1e-3));
}

TEST_CASE("resize_bilinear") {
    std::mt19937_64 rng(3);
    SUBCASE("same size is bit-identical") {
        auto m = random_matrix(7, 5, rng);
        CHECK(resize_bilinear(m, 7, 5) == m);
    }
    SUBCASE("constants stay constant") {
        Matrix m(5, 3, 0.3);
        auto up = resize_bilinear(m, 17, 11);
        for (double v : up.data()) CHECK(v == 0.3);
        auto down = resize_bilinear(m, 2, 1);
        for (double v : down.data()) CHECK(v == 0.3);
    }
    SUBCASE("2x2 checkerboard to 4x4") {
        Matrix m(2, 2, std::vector<double>{1.0, 0.0, 0.0, 1.0});
        auto out = resize_bilinear(m, 4, 4);
        // Source coordinates (i+0.5)/2-0.5 clamped: 0, .25, .75, 1 -> v = 1 - fx - fy + 2 fx fy.
        const double expected[4][4] = {{1.0, 0.75, 0.25, 0.0},
                                       {0.75, 0.625, 0.375, 0.25},
                                       {0.25, 0.375, 0.625, 0.75},
                                       {0.0, 0.25, 0.75, 1.0}};
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 4; ++x) CHECK(out.at(x, y) == doctest::Approx(expected[y][x]).epsilon(1e-15));
    }
    SUBCASE("zero target dimension") {
        CHECK_THROWS_AS(resize_bilinear(Matrix(2, 2), 0, 3), InvalidArgument);
        CHECK_THROWS_AS(resize_bilinear(ImageMatrix(2, 2, 1), 3, 0), InvalidArgument);
    }
    SUBCASE("image values stay in range") {
        std::vector<double> data(6 * 6);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (double& v : data) v = u(rng);
        auto out = resize_bilinear(ImageMatrix(6, 6, 1, data), 13, 9);
        for (double v : out.data()) CHECK((v >= 0.0 && v <= 1.0));
    }
}

TEST_CASE("gaussian_pyramid") {
    SUBCASE("levels=1 is the input") {
        Matrix m(8, 8, 0.5);
        auto p = gaussian_pyramid(m, 1);
        REQUIRE(p.size() == 1);
        CHECK(p[0] == m);
    }
    SUBCASE("constant stays constant") {
        auto p = gaussian_pyramid(Matrix(32, 20, 0.5), 4);
        for (const auto& level : p)
            for (double v : level.data()) CHECK(v == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("dims follow ceil(n / 2^k)") {
        auto p = gaussian_pyramid(Matrix(37, 21, 0.1), 5);
        for (int k = 0; k < 5; ++k) {
            CHECK(p[k].width() == (37 + (1 << k) - 1) / (1 << k));
            CHECK(p[k].height() == (21 + (1 << k) - 1) / (1 << k));
        }
    }
    SUBCASE("impulse at level 2 matches direct convolution oracle") {
        Matrix m(64, 64, 0.0);
        m.at(30, 21) = 1.0;
        const double k1[5] = {1, 4, 6, 4, 1};
        auto direct_level = [&](const Matrix& src) {
            // Full 5x5 outer-product kernel, explicit mirror padding.
            auto refl = [](int i, int n) {
                while (i < 0 || i >= n) i = i < 0 ? -i - 1 : 2 * n - i - 1;
                return i;
            };
            Matrix blurred(src.width(), src.height());
            for (int y = 0; y < src.height(); ++y)
                for (int x = 0; x < src.width(); ++x) {
                    double acc = 0.0;
                    for (int j = -2; j <= 2; ++j)
                        for (int i = -2; i <= 2; ++i)
                            acc += k1[i + 2] * k1[j + 2] / 256.0 * src.at(refl(x + i, src.width()), refl(y + j, src.height()));
                    blurred.at(x, y) = acc;
                }
            Matrix out((src.width() + 1) / 2, (src.height() + 1) / 2);
            for (int y = 0; y < out.height(); ++y)
                for (int x = 0; x < out.width(); ++x) out.at(x, y) = blurred.at(2 * x, 2 * y);
            return out;
        };
        auto oracle = direct_level(direct_level(m));
        auto p = gaussian_pyramid(m, 3);
        REQUIRE(p[2].width() == 16);
        CHECK(max_abs_diff(p[2], oracle) < 1e-15);
    }
    SUBCASE("too many levels") {
        CHECK_THROWS_AS(gaussian_pyramid(Matrix(64, 64), 8), InvalidArgument);
        CHECK_NOTHROW(gaussian_pyramid(Matrix(64, 64), 7));
        CHECK_THROWS_AS(gaussian_pyramid(Matrix(4, 4), 0), InvalidArgument);
    }
}

TEST_CASE("fft2") {
    std::mt19937_64 rng(5);
    SUBCASE("constant gives a single DC coefficient") {
        const int n = 8;
        auto f = fft2(Matrix(n, n, 0.25));
        CHECK(std::abs(f.at(0, 0) - std::complex<double>(0.25 * n * n, 0.0)) < 1e-12);
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x)
                if (x || y) CHECK(std::abs(f.at(x, y)) < 1e-12);
    }
    SUBCASE("impulse has a flat unit spectrum") {
        Matrix m(4, 4, 0.0);
        m.at(0, 0) = 1.0;
        auto f = fft2(m);
        for (const auto& c : f.data) CHECK(std::abs(c) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("matches naive DFT on non-square input") {
        auto m = random_matrix(5, 3, rng);
        auto f = fft2(m);
        for (int v = 0; v < 3; ++v)
            for (int u = 0; u < 5; ++u) CHECK(std::abs(f.at(u, v) - naive_dft(m, u, v)) < 1e-12);
    }
    SUBCASE("round trip") {
        auto m = random_matrix(8, 8, rng);
        auto back = ifft2(fft2(m));
        double worst = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i) worst = std::max(worst, std::abs(back.data[i] - m.data()[i]));
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("wavelets") {
    std::mt19937_64 rng(9);
    SUBCASE("haar step by hand") {
        std::vector<double> x{1, 1, 0, 0};
        auto r = dwt1(x, WaveletFamily::Haar);
        CHECK(r.approx[0] == doctest::Approx(std::sqrt(2.0)));
        CHECK(r.approx[1] == 0.0);
        CHECK(r.detail[0] == 0.0);
        CHECK(r.detail[1] == 0.0);
        auto back = idwt1(r.approx, r.detail, WaveletFamily::Haar);
        for (int i = 0; i < 4; ++i) CHECK(back[i] == doctest::Approx(x[i]));
    }
    SUBCASE("filters are orthonormal") {
        for (auto fam : {WaveletFamily::Haar, WaveletFamily::Db2, WaveletFamily::Db4}) {
            auto h = wavelet_lowpass(fam);
            double sum = 0.0, energy = 0.0;
            for (double v : h) {
                sum += v;
                energy += v * v;
            }
            CHECK(sum == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
            CHECK(energy == doctest::Approx(1.0).epsilon(1e-12));
            for (std::size_t shift = 2; shift < h.size(); shift += 2) {
                double dot = 0.0;
                for (std::size_t i = 0; i + shift < h.size(); ++i) dot += h[i] * h[i + shift];
                CHECK(std::abs(dot) < 1e-12);
            }
        }
    }
    SUBCASE("constant image has zero detail") {
        auto pyr = dwt2(Matrix(20, 12, 0.4), WaveletFamily::Db4, 2);
        for (const auto& d : pyr.details)
            for (const Matrix* band : {&d.lh, &d.hl, &d.hh})
                for (double v : band->data()) CHECK(std::abs(v) < 1e-12);
    }
    SUBCASE("round trip 16x16, 2 levels") {
        auto m = random_matrix(16, 16, rng);
        for (auto fam : {WaveletFamily::Haar, WaveletFamily::Db2, WaveletFamily::Db4}) {
            auto back = idwt2(dwt2(m, fam, 2));
            CHECK(max_abs_diff(back, m) < 1e-8);
        }
    }
    SUBCASE("round trip with padding on odd dims") {
        for (int trial = 0; trial < 10; ++trial) {
            std::uniform_int_distribution<int> dim(3, 40);
            auto m = random_matrix(dim(rng), dim(rng), rng);
            auto pyr = dwt2(m, WaveletFamily::Db4, 3);
            CHECK(pyr.padded_width % 8 == 0);
            CHECK(pyr.levels() == 3);
            CHECK(max_abs_diff(idwt2(pyr), m) < 1e-8);
        }
    }
    SUBCASE("family names") {
        CHECK(parse_wavelet_family("DB4") == WaveletFamily::Db4);
        CHECK(parse_wavelet_family("haar") == WaveletFamily::Haar);
        CHECK_THROWS_AS(parse_wavelet_family("sym8"), InvalidArgument);
    }
}

TEST_CASE("filters") {
    SUBCASE("mirror_index reflects half-sample") {
        CHECK(mirror_index(-1, 5) == 0);
        CHECK(mirror_index(-2, 5) == 1);
        CHECK(mirror_index(5, 5) == 4);
        CHECK(mirror_index(6, 5) == 3);
        CHECK(mirror_index(7, 1) == 0);
    }
    SUBCASE("blur preserves mass of interior impulse") {
        Matrix m(31, 31, 0.0);
        m.at(15, 15) = 1.0;
        CHECK(gaussian_blur(m, 2.0).sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("box_mean3 of ramp is the ramp in the interior") {
        Matrix m(6, 6);
        for (int y = 0; y < 6; ++y)
            for (int x = 0; x < 6; ++x) m.at(x, y) = x + 10.0 * y;
        auto b = box_mean3(m);
        CHECK(b.at(3, 3) == doctest::Approx(m.at(3, 3)));
    }
}
