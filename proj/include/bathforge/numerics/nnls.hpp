// nnls.hpp: Lawson-Hanson nonnegative least squares

#pragma once

#include <Eigen/Dense>

namespace bathforge::numerics {

struct NnlsResult {
    Eigen::VectorXd x;
    double residual_norm{0.0};
    int iterations{0};
    bool converged{true};
};

// Solves min ||A x - b||_2 subject to x >= 0.
NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iterations = 0);

} // namespace bathforge::numerics
