#pragma once

#include "phasic/core/image.hpp"
#include "phasic/saliency/params.hpp"

#include <span>
#include <utility>
#include <vector>

namespace phasic::saliency {

/// Dense row-stochastic matrix: row i holds the outbound transition
/// probabilities of node i.
class TransitionMatrix {
public:
    TransitionMatrix() = default;

    /// Row-normalizes non-negative weights. A row with zero total weight
    /// becomes uniform over all nodes.
    static TransitionMatrix from_weights(int nodes, std::vector<double> weights);

    int nodes() const noexcept { return nodes_; }
    double at(int from, int to) const { return p_[static_cast<std::size_t>(from) * nodes_ + to]; }
    std::span<const double> row(int from) const {
        return {p_.data() + static_cast<std::size_t>(from) * nodes_, static_cast<std::size_t>(nodes_)};
    }

private:
    int nodes_ = 0;
    std::vector<double> p_;
};

struct Equilibrium {
    std::vector<double> distribution;
    int iterations = 0;
    double residual = 0.0;  ///< L1 change of the last step
};

/// Power iteration p <- pP from `start` (uniform when empty) until the L1 step
/// is below `tolerance`. Throws ConvergenceError carrying the residual when
/// `max_iterations` is exhausted.
Equilibrium power_iteration(const TransitionMatrix& chain, std::span<const double> start = {},
                            double tolerance = 1e-7, int max_iterations = 10000);

/// Fully connected chain over a lattice, kept implicit: edge weights are
/// recomputed on demand instead of stored, so a 48x48 lattice needs O(n)
/// memory. Both GBVS chains are reversible, and `start` holds their
/// closed-form stationary vector, which iteration only has to confirm.
class LatticeChain {
public:
    enum class Kind { Activation, Normalization };

    LatticeChain(Kind kind, const Matrix& values, const GbvsParams& params);

    int nodes() const noexcept { return w_ * h_; }
    double weight(int from, int to) const;
    /// Outbound weight of each node.
    const std::vector<double>& degree() const noexcept { return degree_; }
    /// Empty when every weight is zero (uniform chain).
    const std::vector<double>& start() const noexcept { return start_; }
    /// The row-normalized dense matrix; for small lattices and tests.
    TransitionMatrix dense() const;

    /// One step p -> pP.
    void step(std::span<const double> p, std::span<double> out) const;

private:
    Kind kind_;
    int w_, h_;
    std::vector<double> values_;   ///< log M for activation, A for normalization
    std::vector<double> falloff_;  ///< indexed by |dy| * w + |dx|
    std::vector<double> degree_;
    std::vector<double> start_;
};

/// Power iteration on an implicit lattice chain, from chain.start() (uniform
/// when empty).
Equilibrium power_iteration(const LatticeChain& chain, double tolerance = 1e-7, int max_iterations = 10000);

/// Activation chain of a feature map: w(i,j) = |log M_i - log M_j| * F(i-j),
/// M floored at params.log_floor, F a Gaussian falloff of lattice distance.
LatticeChain activation_chain(const Matrix& feature, const GbvsParams& params = {});
/// Normalization chain: w(i,j) = A_j * F(i-j), mass flows toward high activation.
LatticeChain normalization_chain(const Matrix& activation, const GbvsParams& params = {});

/// Lattice dims for an image: ceil(dims / divisor), scaled so the longer side is <= cap.
std::pair<int, int> gbvs_lattice(int width, int height, const GbvsParams& params = {});

/// Graph-based visual saliency. Requires min(width, height) >= 32.
SaliencyMap gbvs(const ImageMatrix& img, const GbvsParams& params = {});

}  // namespace phasic::saliency
