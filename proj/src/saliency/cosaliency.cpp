#include "phasic/saliency/cosaliency.hpp"

#include "phasic/core/error.hpp"
#include "phasic/core/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace phasic::saliency {

namespace {

double sq_dist(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    const double d0 = a[0] - b[0], d1 = a[1] - b[1], d2 = a[2] - b[2];
    return d0 * d0 + d1 * d1 + d2 * d2;
}

// Uniform double in [0,1) built from the raw engine output so the sequence
// does not depend on the standard library's distribution implementation.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int count_distinct(std::span<const PixelSample> samples) {
    std::vector<std::array<double, 3>> f;
    f.reserve(samples.size());
    for (const auto& s : samples) f.push_back(s.feature);
    std::sort(f.begin(), f.end());
    return static_cast<int>(std::unique(f.begin(), f.end()) - f.begin());
}

int nearest(const std::array<double, 3>& x, const std::vector<std::array<double, 3>>& centers) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const double d = sq_dist(x, centers[c]);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(c);
        }
    }
    return best;
}

}  // namespace

KMeansResult kmeans(std::span<const PixelSample> samples, int k, std::uint64_t seed, int max_iterations) {
    if (samples.empty()) throw InvalidArgument("kmeans: no samples");
    if (k < 1) throw InvalidArgument("kmeans: k must be >= 1");
    KMeansResult out;
    out.requested_k = k;
    const int kk = std::min(k, count_distinct(samples));
    const std::size_t n = samples.size();

    std::mt19937_64 rng(seed);
    out.centers.push_back(samples[static_cast<std::size_t>(unit(rng) * n)].feature);
    std::vector<double> d2(n);
    while (static_cast<int>(out.centers.size()) < kk) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : out.centers) best = std::min(best, sq_dist(samples[i].feature, c));
            d2[i] = best;
            total += best;
        }
        const double target = unit(rng) * total;
        double acc = 0.0;
        std::size_t pick = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (d2[i] == 0.0) continue;
            acc += d2[i];
            pick = i;
            if (acc > target) break;
        }
        out.centers.push_back(samples[pick].feature);
    }

    out.labels.assign(n, -1);
    for (int iter = 0; iter < max_iterations; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            const int l = nearest(samples[i].feature, out.centers);
            if (l != out.labels[i]) {
                out.labels[i] = l;
                changed = true;
            }
        }
        if (!changed) break;
        std::vector<std::array<double, 3>> sums(kk, {0.0, 0.0, 0.0});
        std::vector<std::size_t> counts(kk, 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto& s = sums[out.labels[i]];
            for (int d = 0; d < 3; ++d) s[d] += samples[i].feature[d];
            ++counts[out.labels[i]];
        }
        for (int c = 0; c < kk; ++c) {
            if (counts[c] == 0) continue;
            for (int d = 0; d < 3; ++d) out.centers[c][d] = sums[c][d] / counts[c];
        }
    }
    return out;
}

double correspondence_cue(std::span<const double> share) {
    const std::size_t m = share.size();
    if (m == 0) throw InvalidArgument("correspondence_cue: no images");
    if (m == 1) return 1.0;
    double total = 0.0;
    for (double v : share) total += v;
    if (!(total > 0.0)) return 0.0;
    const double mean = 1.0 / static_cast<double>(m);
    double var = 0.0;
    for (double v : share) var += (v / total - mean) * (v / total - mean);
    var /= static_cast<double>(m);
    const double var_max = static_cast<double>(m - 1) / static_cast<double>(m * m);
    return std::clamp(1.0 - var / var_max, 0.0, 1.0);
}

ClusterCues cluster_cues(std::span<const PixelSample> samples, const KMeansResult& clustering, int image_count,
                         double spatial_sigma) {
    const int k = static_cast<int>(clustering.centers.size());
    const double n = static_cast<double>(samples.size());
    std::vector<double> size(k, 0.0), spatial_sum(k, 0.0);
    std::vector<std::vector<double>> per_image(k, std::vector<double>(image_count, 0.0));
    std::vector<double> image_pixels(image_count, 0.0);
    const double two_sigma_sq = 2.0 * spatial_sigma * spatial_sigma;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        const int l = clustering.labels[i];
        size[l] += 1.0;
        const double dx = s.nx - 0.5, dy = s.ny - 0.5;
        spatial_sum[l] += std::exp(-(dx * dx + dy * dy) / two_sigma_sq);
        per_image[l][s.image] += 1.0;
        image_pixels[s.image] += 1.0;
    }

    ClusterCues cues;
    cues.contrast.assign(k, 0.0);
    cues.spatial.assign(k, 0.0);
    cues.corresponding.assign(k, 0.0);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            if (a == b) continue;
            cues.contrast[a] += size[b] / n * std::sqrt(sq_dist(clustering.centers[a], clustering.centers[b]));
        }
        cues.spatial[a] = size[a] > 0.0 ? spatial_sum[a] / size[a] : 0.0;
        std::vector<double> share(image_count);
        for (int j = 0; j < image_count; ++j) share[j] = image_pixels[j] > 0.0 ? per_image[a][j] / image_pixels[j] : 0.0;
        cues.corresponding[a] = correspondence_cue(share);
    }
    return cues;
}

std::vector<double> combine_cues(const ClusterCues& cues) {
    auto normalize = [](const std::vector<double>& v) {
        std::vector<double> out(v.size());
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        const double range = *hi - *lo;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out[i] = range > 1e-12 ? (v[i] - *lo) / range : (v[i] > 1e-12 ? 1.0 : 0.0);
        }
        return out;
    };
    const auto c = normalize(cues.contrast);
    const auto s = normalize(cues.spatial);
    const auto r = normalize(cues.corresponding);
    std::vector<double> out(c.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c[i] * s[i] * r[i];
    return out;
}

CoSaliencyResult cosaliency(std::span<const ImageMatrix> group, const CoSaliencyParams& params) {
    if (group.empty()) throw InvalidArgument("cosaliency: empty image group");
    for (const auto& img : group) {
        if (img.channels() != 3) throw InvalidArgument("cosaliency: every image must have 3 channels");
    }
    const int m = static_cast<int>(group.size());
    CoSaliencyResult result;

    std::vector<std::vector<PixelSample>> per_image(m);
    std::vector<std::pair<int, int>> dims(m);
    for (int i = 0; i < m; ++i) {
        const auto& img = group[i];
        const int longest = std::max(img.width(), img.height());
        int w = img.width(), h = img.height();
        if (longest > params.working_max_dim) {
            const double s = static_cast<double>(params.working_max_dim) / longest;
            w = std::max(1, static_cast<int>(std::lround(w * s)));
            h = std::max(1, static_cast<int>(std::lround(h * s)));
        }
        dims[i] = {w, h};
        const auto lab = rgb_to_lab(resize_bilinear(img, w, h));
        auto& px = per_image[i];
        px.reserve(static_cast<std::size_t>(w) * h);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                px.push_back({{lab[0].at(x, y), lab[1].at(x, y), lab[2].at(x, y)},
                              w > 1 ? static_cast<double>(x) / (w - 1) : 0.5,
                              h > 1 ? static_cast<double>(y) / (h - 1) : 0.5,
                              i});
            }
        }
    }

    auto note_clamp = [&](const KMeansResult& r, const std::string& layer) {
        if (static_cast<int>(r.centers.size()) < r.requested_k) {
            result.warnings.push_back(layer + ": k clamped from " + std::to_string(r.requested_k) + " to " +
                                      std::to_string(r.centers.size()) + " (too few distinct pixels)");
        }
    };

    // Joint layer over the whole group.
    std::vector<PixelSample> all;
    for (const auto& px : per_image) all.insert(all.end(), px.begin(), px.end());
    const KMeansResult joint = kmeans(all, params.k_multi, params.seed, params.max_iterations);
    note_clamp(joint, "multi-image layer");
    const auto joint_score = combine_cues(cluster_cues(all, joint, m, params.spatial_sigma));

    std::size_t offset = 0;
    for (int i = 0; i < m; ++i) {
        const auto& px = per_image[i];
        std::vector<PixelSample> local(px);
        for (auto& s : local) s.image = 0;
        const std::uint64_t seed = params.seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(i + 1));
        const KMeansResult single = kmeans(local, params.k_single, seed, params.max_iterations);
        note_clamp(single, "image " + std::to_string(i));
        const auto single_score = combine_cues(cluster_cues(local, single, 1, params.spatial_sigma));

        const auto [w, h] = dims[i];
        Matrix raw(w, h);
        for (std::size_t p = 0; p < px.size(); ++p) {
            raw.data()[p] = single_score[single.labels[p]] * joint_score[joint.labels[offset + p]];
        }
        offset += px.size();
        if (raw.max() - raw.min() < 1e-12) {
            result.maps.emplace_back(Matrix(group[i].width(), group[i].height(), 0.0));
            continue;
        }
        result.maps.push_back(
            SaliencyMap::normalized(resize_bilinear(SaliencyMap::normalized(raw).values(), group[i].width(), group[i].height())));
    }
    return result;
}

}  // namespace phasic::saliency
