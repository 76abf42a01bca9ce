#pragma once

#include "fekete/gaussian_basis.hpp"
#include "fekete/numerics.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace fekete {

/// Default digits for Gram-based work with n nodes: max(30, ceil(4n)).
int auto_digits(int n);

template <class Scalar>
MatrixX<Scalar> gram(std::span<const Scalar> nodes, const GaussianKernel& kernel) {
    const auto n = static_cast<Eigen::Index>(nodes.size());
    MatrixX<Scalar> k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k(i, i) = like(nodes[i], 1.0);
        for (Eigen::Index j = 0; j < i; ++j) {
            k(i, j) = kernel(nodes[i], nodes[j]);
            k(j, i) = k(i, j);
        }
    }
    return k;
}

MatrixR gram(const PointSet& points, const GaussianKernel& kernel, const PrecisionContext& ctx);

/// s(x) = sum_k c_k K(x, x_k) with K_X c = f(X).
class Interpolant {
public:
    Interpolant(PointSet nodes, GaussianKernel kernel, VectorR coeffs, PrecisionContext ctx);

    const PointSet& nodes() const { return nodes_; }
    const GaussianKernel& kernel() const { return kernel_; }
    const VectorR& coeffs() const { return coeffs_; }
    const PrecisionContext& context() const { return ctx_; }

    Real operator()(double x) const;
    Real operator()(const Real& x) const;

private:
    PointSet nodes_;
    GaussianKernel kernel_;
    VectorR coeffs_;
    PrecisionContext ctx_;
    std::vector<Real> nodes_r_;
};

/// Solves the Gram system. Throws PrecisionError (NotPositiveDefinite or a
/// residual above 10^(-digits/2) relative) when the precision is too low.
Interpolant fit(const PointSet& points, const VectorR& values, const GaussianKernel& kernel,
                const PrecisionContext& ctx);
Interpolant fit(const PointSet& points, std::span<const double> values, const GaussianKernel& kernel,
                const PrecisionContext& ctx);

inline Real eval(const Interpolant& s, double x) { return s(x); }

/// P_X(x) = sqrt(K(x, x) - k(x)^T K_X^{-1} k(x)), with the Gram factor
/// computed once. An empty node set gives P = 1.
class PowerFunction {
public:
    PowerFunction(const PointSet& points, const GaussianKernel& kernel, const PrecisionContext& ctx);

    /// P_X(x)^2. Roundoff negatives down to -10^(-digits/2) are clamped to
    /// zero; anything lower throws PrecisionError.
    Real squared(double x) const;
    Real operator()(double x) const { return sqrt(squared(x)); }

    const PrecisionContext& context() const { return ctx_; }

private:
    GaussianKernel kernel_;
    PrecisionContext ctx_;
    std::vector<Real> nodes_;
    std::optional<CholeskySolver<Real>> chol_;
    Real clamp_tol_;
};

Real power_function(const PointSet& points, const GaussianKernel& kernel, double x, const PrecisionContext& ctx);

/// Grid maximum selection shared with P-greedy: values within a relative
/// 10^(-digits/2) count as tied; ties go to the point nearest `midpoint`,
/// then to the smaller coordinate.
class GridArgmax {
public:
    GridArgmax(double midpoint, const PrecisionContext& ctx);

    void offer(const Real& value, double x, std::size_t index);
    bool empty() const { return !index_; }
    const Real& value() const { return value_; }
    double x() const { return x_; }
    std::size_t index() const { return *index_; }

private:
    double midpoint_;
    Real tie_tol_;
    Real value_;
    double x_ = 0;
    std::optional<std::size_t> index_;
};

struct GridMax {
    Real value;
    double argmax;
    std::size_t index;
};

GridMax max_power_on_grid(const PointSet& points, const GaussianKernel& kernel, std::span<const double> grid,
                          const PrecisionContext& ctx);

/// u_k(x) = exp(eps^2 x_k^2) exp(-eps^2 x^2) l_k(x) with the polynomial
/// Lagrange basis l_k in second barycentric form.
template <class Scalar>
VectorX<Scalar> lagrange_values(std::span<const Scalar> nodes, const Scalar& eps, const Scalar& x) {
    using std::exp;
    const auto n = static_cast<Eigen::Index>(nodes.size());
    VectorX<Scalar> u = VectorX<Scalar>::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        if (x == nodes[k]) {
            u(k) = like(x, 1.0);
            return u;
        }
    }
    const Scalar e2 = eps * eps;
    Scalar denom = like(x, 0.0);
    for (Eigen::Index k = 0; k < n; ++k) {
        Scalar w = like(x, 1.0);
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != k) w *= nodes[k] - nodes[j];
        u(k) = 1 / (w * (x - nodes[k]));
        denom += u(k);
    }
    for (Eigen::Index k = 0; k < n; ++k) u(k) = exp(e2 * (nodes[k] * nodes[k] - x * x)) * (u(k) / denom);
    return u;
}

Eigen::VectorXd lagrange_values(const PointSet& points, double eps, double x);

/// max over the grid of sum_k |u_k(x)|.
double lebesgue_constant(const PointSet& points, double eps, std::span<const double> grid);

/// Product-kernel interpolant on a tensor grid. Coefficients are stored
/// flat with the first dimension varying slowest.
class TensorInterpolant {
public:
    TensorInterpolant(std::vector<PointSet> axes, std::vector<GaussianKernel> kernels, VectorR coeffs,
                      PrecisionContext ctx);

    std::size_t dimension() const { return axes_.size(); }
    const std::vector<PointSet>& axes() const { return axes_; }
    const VectorR& coeffs() const { return coeffs_; }

    Real operator()(std::span<const double> x) const;

private:
    std::vector<PointSet> axes_;
    std::vector<GaussianKernel> kernels_;
    VectorR coeffs_;
    PrecisionContext ctx_;
};

/// Solves (K_1 x ... x K_d) c = f one mode at a time.
TensorInterpolant tensor_fit(std::vector<PointSet> axes, std::vector<GaussianKernel> kernels, const VectorR& values,
                             const PrecisionContext& ctx);

/// sqrt(1 - prod_i (1 - P_i(x_i)^2)) from the one-dimensional power functions.
Real tensor_power(std::span<const PointSet> axes, std::span<const GaussianKernel> kernels,
                  std::span<const double> x, const PrecisionContext& ctx);

}  // namespace fekete
