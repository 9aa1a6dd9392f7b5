#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace oracle {

/// Stationary distribution of a row-stochastic matrix: the eigenvector of P^T
/// for the eigenvalue closest to 1, scaled to sum 1.
inline std::vector<double> stationary(const Eigen::MatrixXd& p) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(p.transpose());
    int best = 0;
    for (int i = 1; i < es.eigenvalues().size(); ++i) {
        if (std::abs(es.eigenvalues()[i] - 1.0) < std::abs(es.eigenvalues()[best] - 1.0)) best = i;
    }
    Eigen::VectorXd v = es.eigenvectors().col(best).real();
    v /= v.sum();
    return {v.data(), v.data() + v.size()};
}

}  // namespace oracle
