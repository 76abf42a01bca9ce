#pragma once

#include "fekete/numerics.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace fekete {

/// K(x, y) = exp(-eps^2 (x - y)^2).
class GaussianKernel {
public:
    explicit GaussianKernel(double eps) : eps_(eps) {
        if (!(eps > 0) || !std::isfinite(eps)) throw std::invalid_argument("kernel scale must be positive and finite");
    }

    double eps() const { return eps_; }

    template <class Scalar>
    Scalar operator()(const Scalar& x, const Scalar& y) const {
        using std::exp;
        const Scalar e = like(x, eps_);
        const Scalar d = x - y;
        return exp(-(e * e) * (d * d));
    }

private:
    double eps_;
};

/// Closed interval [a, b] with a < b.
class Interval {
public:
    Interval(double a, double b) : a_(a), b_(b) {
        if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
            throw std::invalid_argument("interval needs finite endpoints with a < b");
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double length() const { return b_ - a_; }
    double midpoint() const { return 0.5 * (a_ + b_); }
    /// sup |x| over the interval.
    double c_omega() const { return std::max(std::abs(a_), std::abs(b_)); }
    bool contains(double x) const { return a_ <= x && x <= b_; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double a_;
    double b_;
};

/// Hyper-rectangle, one interval per dimension.
using Rectangle = std::vector<Interval>;

/// Strictly increasing nodes.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<double> nodes);
    PointSet(std::vector<double> nodes, const Interval& domain);

    /// Sorts, then validates; duplicates are rejected.
    static PointSet from_unsorted(std::vector<double> nodes);

    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    double operator[](std::size_t i) const { return nodes_[i]; }
    std::span<const double> nodes() const { return nodes_; }
    auto begin() const { return nodes_.begin(); }
    auto end() const { return nodes_.end(); }

    bool within(const Interval& domain) const;

    /// The set with `x` inserted at its sorted position.
    PointSet with(double x) const;

private:
    std::vector<double> nodes_;
};

// --- Orthonormal expansion of the Gaussian kernel -------------------------
//
// phi_l(x) = sqrt(2^l eps^(2l) / l!) x^l exp(-eps^2 x^2),  l = 0, 1, 2, ...
// K(x, y) = sum_l phi_l(x) phi_l(y).

/// log sqrt(2^l eps^(2l) / l!)
template <class Scalar>
Scalar log_phi_coefficient(int ell, const Scalar& eps) {
    using std::lgamma;
    using std::log;
    const Scalar l = like(eps, ell);
    return (l * log(like(eps, 2.0)) + 2 * l * log(eps) - lgamma(l + 1)) / 2;
}

template <class Scalar>
Scalar phi(int ell, const Scalar& x, const Scalar& eps) {
    using std::abs;
    using std::exp;
    using std::log;
    if (ell < 0) throw std::invalid_argument("basis index must be non-negative");
    const Scalar gauss = -(eps * eps) * (x * x);
    if (x == Scalar(0)) return ell == 0 ? like(x, 1.0) : like(x, 0.0);
    const Scalar value = exp(log_phi_coefficient(ell, like(x, 1.0) * eps) + like(x, ell) * log(abs(x)) + gauss);
    return (x < Scalar(0) && ell % 2 == 1) ? Scalar(-value) : value;
}

/// n x n matrix with entry (k, l) = phi_l(x_k).
template <class Scalar>
MatrixX<Scalar> phi_matrix(std::span<const Scalar> nodes, const Scalar& eps) {
    const auto n = static_cast<Eigen::Index>(nodes.size());
    MatrixX<Scalar> m(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l) m(k, l) = phi(static_cast<int>(l), nodes[k], eps);
    return m;
}

/// sum_{l < n} phi_l(x) phi_l(y)
template <class Scalar>
Scalar truncated_kernel(const Scalar& x, const Scalar& y, int n, const Scalar& eps) {
    if (n < 1) throw std::invalid_argument("truncated kernel needs at least one term");
    Scalar sum = like(x, 0.0);
    for (int l = 0; l < n; ++l) sum += phi(l, x, eps) * phi(l, y, eps);
    return sum;
}

/// log W = -eps^2 sum x_k^2 + sum_{i<j} log|x_i - x_j|.
/// Throws std::domain_error if two nodes coincide.
template <class Scalar>
Scalar log_w(std::span<const Scalar> nodes, const Scalar& eps) {
    using std::abs;
    using std::log;
    Scalar sq = like(eps, 0.0);
    Scalar pairs = like(eps, 0.0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        sq += nodes[i] * nodes[i];
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            const Scalar d = abs(nodes[i] - nodes[j]);
            if (d == Scalar(0)) throw std::domain_error("coincident nodes: W vanishes");
            pairs += log(d);
        }
    }
    return pairs - eps * eps * sq;
}

// Context-precision entry points.

Real phi(int ell, double x, double eps, const PrecisionContext& ctx);
MatrixR phi_matrix(const PointSet& points, double eps, const PrecisionContext& ctx);
Real truncated_kernel(double x, double y, int n, double eps, const PrecisionContext& ctx);
double log_w(const PointSet& points, double eps);
Real log_w(const PointSet& points, double eps, const PrecisionContext& ctx);

/// |log|det Phi| - (1/2 sum_l log(2^l eps^(2l) / l!) + log W)|
/// The two sides agree exactly in exact arithmetic.
Real det_factorization_check(const PointSet& points, double eps, const PrecisionContext& ctx);

/// (sqrt(2) eps c)^n / sqrt(n!), valid when n >= 2 eps^2 c^2.
/// Throws std::invalid_argument otherwise.
double tail_sup_bound(int n, double eps, double c_omega);
double log_tail_sup_bound(int n, double eps, double c_omega);
bool tail_bound_applies(int n, double eps, double c_omega);

/// sum_{l >= n} phi_l(x)^2, truncated once the geometric remainder is below tol.
Real tail_sum(double x, int n, double eps, double tol, const PrecisionContext& ctx);

}  // namespace fekete
