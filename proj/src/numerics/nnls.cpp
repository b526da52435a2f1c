// nnls.cpp: Lawson-Hanson active-set nonnegative least squares

#include "bathforge/numerics/nnls.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace bathforge::numerics {

namespace {

// Unconstrained least squares restricted to the passive columns.
Eigen::VectorXd solve_passive(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                              const std::vector<bool>& passive) {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        if (passive[static_cast<std::size_t>(j)]) cols.push_back(j);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(A.cols());
    if (cols.empty()) return z;
    Eigen::MatrixXd sub(A.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = A.col(cols[k]);
    const Eigen::VectorXd zs = sub.colPivHouseholderQr().solve(b);
    for (std::size_t k = 0; k < cols.size(); ++k) z(cols[k]) = zs(static_cast<Eigen::Index>(k));
    return z;
}

} // namespace

NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iterations) {
    const Eigen::Index n = A.cols();
    if (max_iterations <= 0) max_iterations = static_cast<int>(30 * n + 100);

    NnlsResult out;
    out.x = Eigen::VectorXd::Zero(n);
    std::vector<bool> passive(static_cast<std::size_t>(n), false);
    const double tol = 10.0 * std::numeric_limits<double>::epsilon() *
                       A.cwiseAbs().colwise().sum().maxCoeff() * static_cast<double>(std::max(A.rows(), n));

    Eigen::VectorXd w = A.transpose() * (b - A * out.x);
    int iter = 0;
    while (true) {
        Eigen::Index best = -1;
        double best_w = tol;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!passive[static_cast<std::size_t>(j)] && w(j) > best_w) {
                best_w = w(j);
                best = j;
            }
        }
        if (best < 0) break;
        passive[static_cast<std::size_t>(best)] = true;

        while (true) {
            if (++iter > max_iterations) {
                out.converged = false;
                break;
            }
            Eigen::VectorXd z = solve_passive(A, b, passive);
            bool feasible = true;
            for (Eigen::Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) feasible = false;
            if (feasible) {
                out.x = z;
                break;
            }
            // Step back to the boundary of the feasible region.
            double alpha = std::numeric_limits<double>::infinity();
            for (Eigen::Index j = 0; j < n; ++j) {
                if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
                    const double denom = out.x(j) - z(j);
                    if (denom > 0.0) alpha = std::min(alpha, out.x(j) / denom);
                }
            }
            if (!std::isfinite(alpha)) alpha = 0.0;
            out.x += alpha * (z - out.x);
            for (Eigen::Index j = 0; j < n; ++j) {
                if (passive[static_cast<std::size_t>(j)] && out.x(j) <= tol) {
                    passive[static_cast<std::size_t>(j)] = false;
                    out.x(j) = 0.0;
                }
            }
        }
        if (!out.converged) break;
        w = A.transpose() * (b - A * out.x);
    }
    out.iterations = iter;
    out.residual_norm = (A * out.x - b).norm();
    return out;
}

} // namespace bathforge::numerics
