#include "phasic/saliency/gbvs.hpp"

#include "phasic/core/error.hpp"
#include "phasic/core/kernels.hpp"
#include "phasic/saliency/feature_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace phasic::saliency {

TransitionMatrix TransitionMatrix::from_weights(int nodes, std::vector<double> weights) {
    if (nodes < 1) throw InvalidArgument("TransitionMatrix: need at least one node");
    if (weights.size() != static_cast<std::size_t>(nodes) * nodes) {
        throw InvalidArgument("TransitionMatrix: weight matrix must be nodes x nodes");
    }
    TransitionMatrix t;
    t.nodes_ = nodes;
    t.p_ = std::move(weights);
    for (int i = 0; i < nodes; ++i) {
        double* row = t.p_.data() + static_cast<std::size_t>(i) * nodes;
        double total = 0.0;
        for (int j = 0; j < nodes; ++j) {
            if (!(row[j] >= 0.0) || !std::isfinite(row[j])) {
                throw InvalidArgument("TransitionMatrix: weights must be finite and non-negative");
            }
            total += row[j];
        }
        if (total > 0.0) {
            for (int j = 0; j < nodes; ++j) row[j] /= total;
        } else {
            std::fill(row, row + nodes, 1.0 / nodes);
        }
    }
    return t;
}

namespace {

template <class Step>
Equilibrium iterate(int n, std::span<const double> start, double tolerance, int max_iterations, Step step) {
    std::vector<double> p(n, 1.0 / n);
    if (!start.empty()) {
        if (static_cast<int>(start.size()) != n) throw InvalidArgument("power_iteration: start vector has wrong length");
        const double total = std::accumulate(start.begin(), start.end(), 0.0);
        if (!(total > 0.0)) throw InvalidArgument("power_iteration: start vector must have positive mass");
        for (int i = 0; i < n; ++i) p[i] = start[i] / total;
    }

    std::vector<double> next(n);
    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 1; iter <= max_iterations; ++iter) {
        step(std::span<const double>(p), std::span<double>(next));
        const double total = std::accumulate(next.begin(), next.end(), 0.0);
        residual = 0.0;
        for (int j = 0; j < n; ++j) {
            next[j] /= total;
            residual += std::abs(next[j] - p[j]);
        }
        p.swap(next);
        if (residual < tolerance) return {std::move(p), iter, residual};
    }
    throw ConvergenceError("power iteration did not converge in " + std::to_string(max_iterations) +
                               " iterations (residual " + std::to_string(residual) + ")",
                           residual, max_iterations);
}

}  // namespace

Equilibrium power_iteration(const TransitionMatrix& chain, std::span<const double> start, double tolerance,
                            int max_iterations) {
    const int n = chain.nodes();
    return iterate(n, start, tolerance, max_iterations, [&](std::span<const double> p, std::span<double> next) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            const double pi = p[i];
            if (pi == 0.0) continue;
            auto row = chain.row(i);
            for (int j = 0; j < n; ++j) next[j] += pi * row[j];
        }
    });
}

Equilibrium power_iteration(const LatticeChain& chain, double tolerance, int max_iterations) {
    return iterate(chain.nodes(), chain.start(), tolerance, max_iterations,
                   [&](std::span<const double> p, std::span<double> next) { chain.step(p, next); });
}

namespace {

// Gaussian falloff indexed by (|dx|, |dy|).
std::vector<double> falloff_table(int w, int h, double sigma) {
    std::vector<double> f(static_cast<std::size_t>(w) * h);
    for (int dy = 0; dy < h; ++dy) {
        for (int dx = 0; dx < w; ++dx) {
            f[static_cast<std::size_t>(dy) * w + dx] = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
        }
    }
    return f;
}

void check_lattice(const Matrix& m, const char* what) {
    if (m.empty()) throw InvalidArgument(std::string(what) + ": empty lattice");
    for (double v : m.data()) {
        if (!std::isfinite(v) || v < 0.0) throw InvalidArgument(std::string(what) + ": lattice values must be finite and >= 0");
    }
}

Matrix downscale(const Matrix& src, int w, int h) {
    Matrix cur = src;
    while (cur.width() >= 4 * w && cur.height() >= 4 * h) cur = pyr_down(cur);
    return resize_bilinear(cur, w, h);
}

}  // namespace

LatticeChain::LatticeChain(Kind kind, const Matrix& values, const GbvsParams& params)
    : kind_(kind), w_(values.width()), h_(values.height()) {
    check_lattice(values, kind == Kind::Activation ? "activation_chain" : "normalization_chain");
    const double sigma = std::max(params.sigma_fraction * w_, 1e-3);
    falloff_ = falloff_table(w_, h_, sigma);
    values_ = values.data();
    if (kind == Kind::Activation) {
        for (double& v : values_) v = std::log(std::max(v, params.log_floor));
    }

    const int n = nodes();
    degree_.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const int xi = i % w_, yi = i / w_;
        double total = 0.0;
        for (int yj = 0; yj < h_; ++yj) {
            const double* frow = falloff_.data() + static_cast<std::size_t>(std::abs(yj - yi)) * w_;
            const double* vrow = values_.data() + static_cast<std::size_t>(yj) * w_;
            if (kind == Kind::Activation) {
                const double li = values_[i];
                for (int xj = 0; xj < w_; ++xj) total += std::abs(li - vrow[xj]) * frow[std::abs(xj - xi)];
            } else {
                for (int xj = 0; xj < w_; ++xj) total += vrow[xj] * frow[std::abs(xj - xi)];
            }
        }
        if (kind == Kind::Normalization) total -= values_[i] * falloff_[0];  // no self loop
        degree_[i] = std::max(total, 0.0);
    }

    // Symmetric weights (activation) are stationary at the degree; the
    // normalization weights A_i A_j F are symmetric after scaling by A_i.
    start_ = degree_;
    if (kind == Kind::Normalization) {
        for (int i = 0; i < n; ++i) start_[i] *= values_[i];
    }
    if (!(std::accumulate(start_.begin(), start_.end(), 0.0) > 0.0)) start_.clear();
}

double LatticeChain::weight(int from, int to) const {
    if (from == to) return 0.0;
    const double f = falloff_[static_cast<std::size_t>(std::abs(from / w_ - to / w_)) * w_ + std::abs(from % w_ - to % w_)];
    return kind_ == Kind::Activation ? std::abs(values_[from] - values_[to]) * f : values_[to] * f;
}

TransitionMatrix LatticeChain::dense() const {
    const int n = nodes();
    std::vector<double> w(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(i) * n + j] = weight(i, j);
    }
    return TransitionMatrix::from_weights(n, std::move(w));
}

void LatticeChain::step(std::span<const double> p, std::span<double> out) const {
    const int n = nodes();
    std::vector<double> q(n);
    double uniform = 0.0;
    for (int i = 0; i < n; ++i) {
        if (degree_[i] > 0.0) {
            q[i] = p[i] / degree_[i];
        } else {
            q[i] = 0.0;
            uniform += p[i] / n;
        }
    }
    for (int j = 0; j < n; ++j) {
        const int xj = j % w_, yj = j / w_;
        double acc = 0.0;
        for (int yi = 0; yi < h_; ++yi) {
            const double* frow = falloff_.data() + static_cast<std::size_t>(std::abs(yi - yj)) * w_;
            const double* qrow = q.data() + static_cast<std::size_t>(yi) * w_;
            if (kind_ == Kind::Activation) {
                const double* vrow = values_.data() + static_cast<std::size_t>(yi) * w_;
                const double lj = values_[j];
                for (int xi = 0; xi < w_; ++xi) acc += qrow[xi] * std::abs(vrow[xi] - lj) * frow[std::abs(xi - xj)];
            } else {
                for (int xi = 0; xi < w_; ++xi) acc += qrow[xi] * frow[std::abs(xi - xj)];
            }
        }
        if (kind_ == Kind::Normalization) acc = values_[j] * (acc - q[j] * falloff_[0]);
        out[j] = uniform + acc;
    }
}

LatticeChain activation_chain(const Matrix& feature, const GbvsParams& params) {
    return LatticeChain(LatticeChain::Kind::Activation, feature, params);
}

LatticeChain normalization_chain(const Matrix& activation, const GbvsParams& params) {
    return LatticeChain(LatticeChain::Kind::Normalization, activation, params);
}

std::pair<int, int> gbvs_lattice(int width, int height, const GbvsParams& params) {
    if (params.lattice_divisor < 1 || params.lattice_cap < 2) throw InvalidArgument("gbvs: invalid lattice parameters");
    int lw = (width + params.lattice_divisor - 1) / params.lattice_divisor;
    int lh = (height + params.lattice_divisor - 1) / params.lattice_divisor;
    const int longest = std::max(lw, lh);
    if (longest > params.lattice_cap) {
        const double s = static_cast<double>(params.lattice_cap) / longest;
        lw = std::max(2, static_cast<int>(std::lround(lw * s)));
        lh = std::max(2, static_cast<int>(std::lround(lh * s)));
    }
    return {lw, lh};
}

SaliencyMap gbvs(const ImageMatrix& img, const GbvsParams& params) {
    if (std::min(img.width(), img.height()) < 32) {
        throw InvalidArgument("gbvs: image " + std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                              " is smaller than 32 pixels on a side");
    }
    const auto [lw, lh] = gbvs_lattice(img.width(), img.height(), params);
    const OpponencyPlanes planes = opponency_planes(img);

    const Matrix fine_i = downscale(planes.intensity, 2 * lw, 2 * lh);
    struct Channel {
        std::vector<Matrix> maps;
    };
    Channel intensity{{resize_bilinear(fine_i, lw, lh)}};
    Channel color{{downscale(planes.rg, lw, lh), downscale(planes.by, lw, lh)}};
    Channel orientation;
    for (double theta : {0.0, 45.0, 90.0, 135.0}) {
        Matrix r = convolve2d(fine_i, gabor_kernel(theta));
        for (double& v : r.data()) v = std::abs(v);
        orientation.maps.push_back(resize_bilinear(r, lw, lh));
    }

    Matrix total(lw, lh, 0.0);
    int active_channels = 0;
    for (const Channel* ch : {&intensity, &color, &orientation}) {
        Matrix acc(lw, lh, 0.0);
        int used = 0;
        for (const Matrix& fm : ch->maps) {
            if (is_flat(fm)) continue;
            Matrix m(lw, lh);
            const double lo = fm.min(), range = fm.max() - lo;
            for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = (fm.data()[i] - lo) / range;

            const Equilibrium a = power_iteration(activation_chain(m, params), params.tolerance, params.max_iterations);
            const Equilibrium s = power_iteration(normalization_chain(Matrix(lw, lh, a.distribution), params),
                                                  params.tolerance, params.max_iterations);
            for (std::size_t i = 0; i < acc.size(); ++i) acc.data()[i] += s.distribution[i];
            ++used;
        }
        if (used == 0) continue;
        for (std::size_t i = 0; i < total.size(); ++i) total.data()[i] += acc.data()[i] / used;
        ++active_channels;
    }
    if (active_channels == 0 || is_flat(total, 1e-12)) return SaliencyMap(Matrix(img.width(), img.height(), 0.0));
    return SaliencyMap::normalized(resize_bilinear(total, img.width(), img.height()));
}

}  // namespace phasic::saliency
