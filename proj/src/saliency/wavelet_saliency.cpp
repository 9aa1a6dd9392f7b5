#include "phasic/saliency/wavelet_saliency.hpp"

#include "phasic/core/error.hpp"
#include "phasic/core/kernels.hpp"
#include "phasic/core/transforms.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace phasic::saliency {

int wavelet_levels_for(int width, int height, const WaveletSaliencyParams& params) {
    if (params.levels < 1) throw InvalidArgument("wavelet_saliency: levels must be >= 1");
    const int capacity = static_cast<int>(std::floor(std::log2(std::min(width, height))));
    if (params.levels <= capacity) return params.levels;
    if (params.clamp_levels && capacity >= 1) return capacity;
    throw InvalidArgument("wavelet_saliency: " + std::to_string(params.levels) + " levels exceed the capacity of a " +
                          std::to_string(width) + "x" + std::to_string(height) + " image");
}

std::vector<FeatureMap> wavelet_feature_maps(const ImageMatrix& img, const WaveletSaliencyParams& params) {
    const int levels = wavelet_levels_for(img.width(), img.height(), params);
    std::vector<Matrix> channels;
    if (img.channels() == 3) {
        auto lab = rgb_to_lab(img);
        const double scale[3] = {1.0 / 100.0, 1.0 / 128.0, 1.0 / 128.0};
        for (int c = 0; c < 3; ++c) {
            for (double& v : lab[c].data()) v *= scale[c];
            channels.push_back(std::move(lab[c]));
        }
    } else {
        channels.push_back(img.plane(0));
    }

    std::vector<FeatureMap> maps;
    for (std::size_t c = 0; c < channels.size(); ++c) {
        const WaveletPyramid pyr = dwt2(channels[c], params.family, levels);
        for (int s = 1; s <= levels; ++s) {
            WaveletPyramid partial = pyr;
            for (double& v : partial.approx.data()) v = 0.0;
            for (int k = s; k < levels; ++k) {
                for (Matrix* band : {&partial.details[k].lh, &partial.details[k].hl, &partial.details[k].hh}) {
                    for (double& v : band->data()) v = 0.0;
                }
            }
            Matrix rec = idwt2(partial);
            for (double& v : rec.data()) v *= v;
            maps.push_back({std::move(rec), FeatureChannel::WaveletLevel, 0, s, static_cast<int>(c)});
        }
    }
    return maps;
}

Matrix gaussian_surprise(const std::vector<Matrix>& features, double ridge) {
    if (features.empty()) throw InvalidArgument("gaussian_surprise: no features");
    const int d = static_cast<int>(features.size());
    const std::size_t n = features.front().size();
    for (const auto& f : features) {
        if (f.size() != n) throw InvalidArgument("gaussian_surprise: feature maps differ in size");
    }

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (int k = 0; k < d; ++k) mean[k] = features[k].mean();
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
    Eigen::VectorXd v(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = 0; k < d; ++k) v[k] = features[k].data()[i] - mean[k];
        cov.selfadjointView<Eigen::Lower>().rankUpdate(v);
    }
    cov = cov.selfadjointView<Eigen::Lower>();
    cov /= static_cast<double>(n);
    cov.diagonal().array() += ridge;

    const Eigen::LDLT<Eigen::MatrixXd> ldlt(cov);
    const double log_det = ldlt.vectorD().array().log().sum();
    const double constant = 0.5 * (d * std::log(2.0 * std::numbers::pi) + log_det);

    const Eigen::MatrixXd precision = ldlt.solve(Eigen::MatrixXd::Identity(d, d));

    Matrix out(features.front().width(), features.front().height());
    std::vector<double> dv(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = 0; k < d; ++k) dv[k] = features[k].data()[i] - mean[k];
        double q = 0.0;
        for (int a = 0; a < d; ++a) {
            double row = 0.0;
            for (int b = 0; b < d; ++b) row += precision(a, b) * dv[b];
            q += dv[a] * row;
        }
        out.data()[i] = constant + 0.5 * q;
    }
    return out;
}

SaliencyMap wavelet_saliency(const ImageMatrix& img, const WaveletSaliencyParams& params) {
    const auto maps = wavelet_feature_maps(img, params);
    const int levels = wavelet_levels_for(img.width(), img.height(), params);
    const int w = img.width(), h = img.height();

    Matrix local(w, h, 0.0);
    for (int s = 1; s <= levels; ++s) {
        Matrix level_max(w, h, 0.0);
        for (const auto& fm : maps) {
            if (fm.center != s) continue;
            for (std::size_t i = 0; i < level_max.size(); ++i) {
                level_max.data()[i] = std::max(level_max.data()[i], fm.values.data()[i]);
            }
        }
        for (std::size_t i = 0; i < local.size(); ++i) local.data()[i] += level_max.data()[i];
    }
    if (local.max() < 1e-12) return SaliencyMap(Matrix(w, h, 0.0));

    std::vector<Matrix> stacked;
    stacked.reserve(maps.size());
    for (const auto& fm : maps) stacked.push_back(fm.values);
    const Matrix global = gaussian_surprise(stacked, params.ridge);

    const SaliencyMap nl = SaliencyMap::normalized(local);
    const SaliencyMap ng = SaliencyMap::normalized(global);
    Matrix combined(w, h);
    for (std::size_t i = 0; i < combined.size(); ++i) {
        combined.data()[i] = nl.values().data()[i] * std::exp(ng.values().data()[i]);
    }
    const SaliencyMap stretched = SaliencyMap::normalized(combined);
    return SaliencyMap::normalized(gaussian_blur(stretched.values(), params.blur_sigma));
}

}  // namespace phasic::saliency
