#include "phasic/saliency/simpsal.hpp"

#include "phasic/core/error.hpp"
#include "phasic/core/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace phasic::saliency {

namespace {

constexpr int kPyramidLevels = 9;
constexpr int kCenters[] = {2, 3, 4};
constexpr int kDeltas[] = {3, 4};
constexpr int kConspicuityScale = 4;
constexpr double kOrientations[] = {0.0, 45.0, 90.0, 135.0};

Matrix center_surround(const Matrix& center, const Matrix& surround) {
    const Matrix up = resize_bilinear(surround, center.width(), center.height());
    Matrix out(center.width(), center.height());
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] = std::abs(center.data()[i] - up.data()[i]);
    return out;
}

void add_into(Matrix& acc, const Matrix& m) {
    const Matrix r = resize_bilinear(m, acc.width(), acc.height());
    for (std::size_t i = 0; i < acc.size(); ++i) acc.data()[i] += r.data()[i];
}

std::pair<int, int> working_dims(int width, int height, int working_min_dim) {
    if (std::min(width, height) < 64) {
        throw InvalidArgument("simpsal: image " + std::to_string(width) + "x" + std::to_string(height) +
                              " is too small for the 9-level pyramid (min side 64)");
    }
    if (working_min_dim < 256) throw InvalidArgument("simpsal: working size must be >= 256");
    const double scale = static_cast<double>(working_min_dim) / std::min(width, height);
    return {std::max(working_min_dim, static_cast<int>(std::lround(width * scale))),
            std::max(working_min_dim, static_cast<int>(std::lround(height * scale)))};
}

}  // namespace

Matrix itti_normalize(const Matrix& m, double local_max_floor) {
    Matrix out(m.width(), m.height(), 0.0);
    if (is_flat(m)) return out;
    const double lo = m.min();
    const double range = m.max() - lo;
    for (std::size_t i = 0; i < m.size(); ++i) out.data()[i] = (m.data()[i] - lo) / range;

    // Mean of local maxima other than the global one.
    const int w = out.width(), h = out.height();
    double sum = 0.0;
    int count = 0;
    bool skipped_global = false;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double v = out.at(x, y);
            if (v < local_max_floor) continue;
            bool is_max = true;
            for (int dy = -1; dy <= 1 && is_max; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (!dx && !dy) continue;
                    const int xx = x + dx, yy = y + dy;
                    if (xx < 0 || yy < 0 || xx >= w || yy >= h) continue;
                    if (out.at(xx, yy) > v) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (!is_max) continue;
            if (v == 1.0 && !skipped_global) {
                skipped_global = true;
                continue;
            }
            sum += v;
            ++count;
        }
    }
    const double mbar = count ? sum / count : 0.0;
    const double gain = (1.0 - mbar) * (1.0 - mbar);
    for (double& v : out.data()) v *= gain;
    return out;
}

std::vector<FeatureMap> simpsal_feature_maps(const ImageMatrix& img, const SimpSalParams& params) {
    const auto [ww, wh] = working_dims(img.width(), img.height(), params.working_min_dim);
    const ImageMatrix work = resize_bilinear(img, ww, wh);
    const OpponencyPlanes planes = opponency_planes(work);

    const auto pyr_i = gaussian_pyramid(planes.intensity, kPyramidLevels);
    const auto pyr_rg = gaussian_pyramid(planes.rg, kPyramidLevels);
    const auto pyr_by = gaussian_pyramid(planes.by, kPyramidLevels);

    std::vector<FeatureMap> maps;
    maps.reserve(42);
    auto add_cs = [&](const std::vector<Matrix>& pyr, FeatureChannel ch, int theta) {
        for (int c : kCenters) {
            for (int d : kDeltas) {
                maps.push_back({center_surround(pyr[c], pyr[c + d]), ch, theta, c, c + d});
            }
        }
    };
    add_cs(pyr_i, FeatureChannel::Intensity, 0);
    add_cs(pyr_rg, FeatureChannel::ColorRG, 0);
    add_cs(pyr_by, FeatureChannel::ColorBY, 0);

    for (double theta : kOrientations) {
        const Matrix kernel = gabor_kernel(theta);
        std::vector<Matrix> pyr_o(kPyramidLevels);
        for (int level = kCenters[0]; level < kPyramidLevels; ++level) {
            Matrix r = convolve2d(pyr_i[level], kernel);
            for (double& v : r.data()) v = std::abs(v);
            pyr_o[level] = std::move(r);
        }
        add_cs(pyr_o, FeatureChannel::Orientation, static_cast<int>(theta));
    }
    return maps;
}

SaliencyMap simpsal(const ImageMatrix& img, const SimpSalParams& params) {
    const auto maps = simpsal_feature_maps(img, params);

    // Scale-4 lattice of the working image.
    auto [sw, sh] = working_dims(img.width(), img.height(), params.working_min_dim);
    for (int k = 0; k < kConspicuityScale; ++k) {
        sw = (sw + 1) / 2;
        sh = (sh + 1) / 2;
    }

    const double floor = params.local_max_floor;
    Matrix intensity(sw, sh), color(sw, sh), orientation(sw, sh);
    Matrix per_theta[4] = {Matrix(sw, sh), Matrix(sw, sh), Matrix(sw, sh), Matrix(sw, sh)};
    for (const auto& fm : maps) {
        const Matrix n = itti_normalize(fm.values, floor);
        switch (fm.channel) {
            case FeatureChannel::Intensity: add_into(intensity, n); break;
            case FeatureChannel::ColorRG:
            case FeatureChannel::ColorBY: add_into(color, n); break;
            case FeatureChannel::Orientation: add_into(per_theta[fm.orientation_deg / 45], n); break;
            case FeatureChannel::WaveletLevel: break;
        }
    }
    for (const auto& t : per_theta) add_into(orientation, itti_normalize(t, floor));

    const Matrix ni = itti_normalize(intensity, floor);
    const Matrix nc = itti_normalize(color, floor);
    const Matrix no = itti_normalize(orientation, floor);
    Matrix combined(sw, sh);
    for (std::size_t i = 0; i < combined.size(); ++i) {
        combined.data()[i] = (ni.data()[i] + nc.data()[i] + no.data()[i]) / 3.0;
    }
    if (is_flat(combined)) return SaliencyMap(Matrix(img.width(), img.height(), 0.0));
    return SaliencyMap::normalized(resize_bilinear(combined, img.width(), img.height()));
}

}  // namespace phasic::saliency
