#pragma once

#include "fekete/gaussian_basis.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fekete {

// Approximate Fekete points of the Gaussian kernel on an interval minimise
//
//     I(x) = eps^2 sum_k x_k^2 + sum_{i<j} log(1 / |x_i - x_j|)  = -log W(x)
//
// over ordered nodes in [a, b]^n. I is strictly convex on the ordered simplex,
// so the minimiser is unique.

template <class Scalar>
Scalar energy(std::span<const Scalar> x, const Scalar& eps) {
    return -log_w(x, eps);
}

/// dI/dx_i = 2 eps^2 x_i - sum_{j != i} 1 / (x_i - x_j)
template <class Scalar>
VectorX<Scalar> energy_gradient(std::span<const Scalar> x, const Scalar& eps) {
    const auto n = static_cast<Eigen::Index>(x.size());
    VectorX<Scalar> g(n);
    const Scalar two_e2 = 2 * eps * eps;
    for (Eigen::Index i = 0; i < n; ++i) {
        Scalar gi = two_e2 * x[i];
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            const Scalar d = x[i] - x[j];
            if (d == Scalar(0)) throw std::domain_error("coincident nodes: energy gradient undefined");
            gi -= 1 / d;
        }
        g(i) = gi;
    }
    return g;
}

/// Diagonal 2 eps^2 + sum_{k != i} (x_i - x_k)^-2, off-diagonal -(x_i - x_j)^-2.
/// Strictly diagonally dominant with a positive diagonal.
template <class Scalar>
MatrixX<Scalar> energy_hessian(std::span<const Scalar> x, const Scalar& eps) {
    const auto n = static_cast<Eigen::Index>(x.size());
    MatrixX<Scalar> h(n, n);
    const Scalar two_e2 = 2 * eps * eps;
    for (Eigen::Index i = 0; i < n; ++i) {
        Scalar diag = two_e2;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            const Scalar d = x[i] - x[j];
            if (d == Scalar(0)) throw std::domain_error("coincident nodes: energy Hessian undefined");
            const Scalar w = 1 / (d * d);
            h(i, j) = -w;
            diag += w;
        }
        h(i, i) = diag;
    }
    return h;
}

double energy(const PointSet& points, double eps);
Eigen::VectorXd energy_gradient(const PointSet& points, double eps);
Eigen::MatrixXd energy_hessian(const PointSet& points, double eps);

struct EnergyProblem {
    EnergyProblem(int n, double eps, Interval interval);

    int n;
    double eps;
    Interval interval;
};

struct SolveReport {
    PointSet points;
    int iterations = 0;
    /// Infinity norm of the KKT residual at `points`.
    double final_grad_norm = 0;
    /// Indices of nodes sitting exactly on an interval endpoint.
    std::vector<std::size_t> active_bounds;
    bool converged = false;
    /// I(x) at the starting point and after every accepted step.
    std::vector<double> energy_history;
};

/// Thrown when the iteration limit is hit; carries the best iterate.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, SolveReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const SolveReport& report() const { return report_; }

private:
    SolveReport report_;
};

struct SolverOptions {
    double tol = 1e-10;
    int max_iter = 200;
};

/// KKT residual for minimising I over [a, b]^n: |g_i| in the interior,
/// the outward-blocked part of g_i at an endpoint.
double kkt_residual(std::span<const double> x, const Eigen::VectorXd& g, const Interval& interval);

/// Projected damped Newton with an active set for nodes clamped at the
/// interval ends. Starts from the Chebyshev points of the interval.
SolveReport solve_fekete(const EnergyProblem& problem, const SolverOptions& options = {});
SolveReport solve_fekete(const EnergyProblem& problem, const SolverOptions& options,
                         const PointSet& start);

/// Per-dimension solves; the result is their Cartesian product.
std::vector<PointSet> tensor_fekete_axes(std::span<const int> n_per_dim, std::span<const double> eps_per_dim,
                                         const Rectangle& rectangle, const SolverOptions& options = {});

/// N x d matrix of points, N = prod n_i, lexicographic with the first
/// dimension varying slowest.
Eigen::MatrixXd tensor_product(std::span<const PointSet> axes);

Eigen::MatrixXd tensor_fekete(std::span<const int> n_per_dim, std::span<const double> eps_per_dim,
                              const Rectangle& rectangle, const SolverOptions& options = {});

}  // namespace fekete
