#pragma once

#include "fekete/gaussian_basis.hpp"
#include "fekete/numerics.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <span>

namespace fekete {

/// C1 = (128 / pi)^(1/4).
inline double rate_constant_c1() { return std::pow(128.0 / std::numbers::pi, 0.25); }
/// C2 = sqrt(2e) eps c.
inline double rate_constant_c2(double eps, double c_omega) { return std::sqrt(2.0 * std::numbers::e) * eps * c_omega; }

/// 2 |f| (1 + Lambda) tail_sup.
double generic_uniform_bound(int n, double lebesgue, double tail_sup, double norm);

/// Uniform error bound at approximate Fekete points:
/// C1 |f| n^(3/4) exp(-n (log(n) / 2 - log C2)). Needs n >= 2 eps^2 c^2.
double gaussian_rate_bound(int n, double eps, double c_omega, double norm);
double log_gaussian_rate_bound(int n, double eps, double c_omega, double norm);

/// Positive, non-decreasing, divergent weights alpha_l, given by their
/// logarithm so that factorial-sized sequences stay representable.
class AlphaSequence {
public:
    explicit AlphaSequence(std::function<double(int)> log_alpha) : log_alpha_(std::move(log_alpha)) {}

    static AlphaSequence linear();
    /// alpha_l = sqrt(l! 2^l eps^(2l)), whose subspace kernel is the Bessel kernel.
    static AlphaSequence bessel(double eps);
    static AlphaSequence constant(double value);

    double log_alpha(int l) const { return log_alpha_(l); }
    double operator()(int l) const { return std::exp(log_alpha_(l)); }

    /// Checks alpha_1 >= 1, monotonicity on 1..limit, and alpha_limit > alpha_1.
    /// Throws std::invalid_argument otherwise.
    void validate(int limit) const;

private:
    std::function<double(int)> log_alpha_;
};

/// Which weight divides the Fekete bound: alpha_n for the Gaussian
/// subspace theorem, alpha_{n+1} for the general one.
enum class AlphaIndex { n, n_plus_one };

double subspace_bound(int n, const AlphaSequence& alpha, double eps, double c_omega, double alpha_norm,
                      AlphaIndex index = AlphaIndex::n);
double log_subspace_bound(int n, const AlphaSequence& alpha, double eps, double c_omega, double alpha_norm,
                          AlphaIndex index = AlphaIndex::n);

/// exp(-eps^2 (x^2 + y^2)) sum_l (xy)^l / (l!)^2, i.e. exp(...) I0(2 sqrt(xy)).
Real bessel_subspace_kernel(double x, double y, double eps, const PrecisionContext& ctx);

/// C1 |f| sum_i n_i^(3/4) exp(-n_i (log(n_i) / 2 - log C_{i,2})).
double tensor_bound(std::span<const int> n, std::span<const double> eps, std::span<const double> c_omega,
                    double norm);

/// C = min((b - a) / 6, 1) / 8, the largest value the fill-distance bound allows.
double fill_distance_constant(const Interval& interval);
/// 2 |f| exp(C log(h) / h), for 0 < h < 1.
double fill_distance_bound(double h, const Interval& interval, double norm);

/// f(x) = x^m exp(x - eps^2 x^2)
struct TestFunction {
    TestFunction(int m, double eps);

    int m;
    double eps;

    template <class Scalar>
    Scalar operator()(const Scalar& x) const {
        using std::exp;
        using std::pow;
        const Scalar e = like(x, eps);
        return pow(x, static_cast<long>(m)) * exp(x - e * e * x * x);
    }
};

inline double test_function_eval(const TestFunction& f, double x) { return f(x); }
inline Real test_function_eval(const TestFunction& f, double x, const PrecisionContext& ctx) { return f(ctx.real(x)); }

/// RKHS norm from |f|^2 = (2 eps^2)^(-m) sum_l (2 eps^2)^(-l) (l + m)! / (l!)^2,
/// summed until the geometric remainder is below tol^2.
Real test_function_norm(const TestFunction& f, double tol, const PrecisionContext& ctx);

}  // namespace fekete
