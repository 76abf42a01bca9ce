#include "fekete/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fekete {

namespace {

// log of n^(3/4) exp(-n (log(n) / 2 - log C2)), without C1 or |f|.
double log_rate_term(int n, double eps, double c_omega) {
    const double ln = std::log(static_cast<double>(n));
    return 0.75 * ln - n * (0.5 * ln - std::log(rate_constant_c2(eps, c_omega)));
}

void require_rate_precondition(int n, double eps, double c_omega, const std::string& where) {
    if (!(eps > 0) || !(c_omega > 0)) throw std::invalid_argument(where + ": needs eps > 0 and c_omega > 0");
    if (!tail_bound_applies(n, eps, c_omega))
        throw std::invalid_argument(where + ": requires n >= 2 eps^2 c_omega^2 (n = " + std::to_string(n) +
                                    ", 2 eps^2 c^2 = " + std::to_string(2 * eps * eps * c_omega * c_omega) + ")");
}

double log_or_minus_inf(double v) { return v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity(); }

}  // namespace

double generic_uniform_bound(int n, double lebesgue, double tail_sup, double norm) {
    if (n < 1 || lebesgue < 0 || tail_sup < 0 || norm < 0)
        throw std::invalid_argument("generic_uniform_bound: inputs must be non-negative");
    return 2 * norm * (1 + lebesgue) * tail_sup;
}

double log_gaussian_rate_bound(int n, double eps, double c_omega, double norm) {
    require_rate_precondition(n, eps, c_omega, "gaussian_rate_bound");
    if (norm < 0) throw std::invalid_argument("gaussian_rate_bound: norm must be non-negative");
    return std::log(rate_constant_c1()) + log_or_minus_inf(norm) + log_rate_term(n, eps, c_omega);
}

double gaussian_rate_bound(int n, double eps, double c_omega, double norm) {
    return std::exp(log_gaussian_rate_bound(n, eps, c_omega, norm));
}

AlphaSequence AlphaSequence::linear() {
    return AlphaSequence([](int l) { return std::log(static_cast<double>(l)); });
}

AlphaSequence AlphaSequence::bessel(double eps) {
    return AlphaSequence(
        [eps](int l) { return 0.5 * (std::lgamma(l + 1.0) + l * std::log(2.0) + 2.0 * l * std::log(eps)); });
}

AlphaSequence AlphaSequence::constant(double value) {
    const double lv = std::log(value);
    return AlphaSequence([lv](int) { return lv; });
}

void AlphaSequence::validate(int limit) const {
    if (limit < 2) throw std::invalid_argument("alpha validation needs a limit of at least 2");
    if (!(log_alpha(1) >= 0)) throw std::invalid_argument("alpha sequence needs alpha_1 >= 1");
    for (int l = 1; l < limit; ++l)
        if (!(log_alpha(l + 1) >= log_alpha(l)))
            throw std::invalid_argument("alpha sequence decreases at index " + std::to_string(l));
    if (!(log_alpha(limit) > log_alpha(1)))
        throw std::invalid_argument("alpha sequence does not grow; a divergent sequence is required");
}

double log_subspace_bound(int n, const AlphaSequence& alpha, double eps, double c_omega, double alpha_norm,
                          AlphaIndex index) {
    alpha.validate(std::max(n + 1, 32));
    const int k = index == AlphaIndex::n ? n : n + 1;
    return log_gaussian_rate_bound(n, eps, c_omega, alpha_norm) - alpha.log_alpha(k);
}

double subspace_bound(int n, const AlphaSequence& alpha, double eps, double c_omega, double alpha_norm,
                      AlphaIndex index) {
    return std::exp(log_subspace_bound(n, alpha, eps, c_omega, alpha_norm, index));
}

Real bessel_subspace_kernel(double x, double y, double eps, const PrecisionContext& ctx) {
    const Real xy = ctx.real(x) * ctx.real(y);
    const Real tol = ctx.pow10(-ctx.digits());
    Real term = ctx.real(1.0);
    Real sum = ctx.real(0.0);
    for (long l = 0;; ++l) {
        sum += term;
        const Real ratio = xy / ((l + 1) * (l + 1));
        const Real next = term * ratio;
        const Real r = abs(ratio);
        if (next == 0 || (r < 0.5 && abs(next) / (1 - r) <= tol)) break;
        term = next;
    }
    const Real e = ctx.real(eps);
    const Real xr = ctx.real(x);
    const Real yr = ctx.real(y);
    return exp(-(e * e) * (xr * xr + yr * yr)) * sum;
}

double tensor_bound(std::span<const int> n, std::span<const double> eps, std::span<const double> c_omega,
                    double norm) {
    if (n.empty() || n.size() != eps.size() || n.size() != c_omega.size())
        throw std::invalid_argument("tensor_bound: per-dimension lists must be non-empty and of equal length");
    if (norm < 0) throw std::invalid_argument("tensor_bound: norm must be non-negative");
    double sum = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        require_rate_precondition(n[i], eps[i], c_omega[i], "tensor_bound (dimension " + std::to_string(i) + ")");
        sum += std::exp(log_rate_term(n[i], eps[i], c_omega[i]));
    }
    return rate_constant_c1() * norm * sum;
}

double fill_distance_constant(const Interval& interval) {
    return std::min(interval.length() / 6.0, 1.0) / 8.0;
}

double fill_distance_bound(double h, const Interval& interval, double norm) {
    if (!(h > 0) || !(h < 1)) throw std::invalid_argument("fill_distance_bound is only applied for 0 < h < 1");
    if (norm < 0) throw std::invalid_argument("fill_distance_bound: norm must be non-negative");
    return 2 * norm * std::exp(fill_distance_constant(interval) * std::log(h) / h);
}

TestFunction::TestFunction(int m_, double eps_) : m(m_), eps(eps_) {
    if (m < 0) throw std::invalid_argument("test function needs m >= 0");
    if (!(eps > 0)) throw std::invalid_argument("test function needs eps > 0");
}

Real test_function_norm(const TestFunction& f, double tol, const PrecisionContext& ctx) {
    if (!(tol > 0)) throw std::invalid_argument("test_function_norm: tolerance must be positive");
    const Real e = ctx.real(f.eps);
    const Real q = 2 * e * e;
    const Real tol2 = ctx.real(tol) * ctx.real(tol);

    // term_l = q^(-m-l) (l + m)! / (l!)^2
    Real term = exp(lgamma(ctx.real(f.m + 1.0))) / pow(q, static_cast<long>(f.m));
    Real sum = ctx.real(0.0);
    for (long l = 0;; ++l) {
        sum += term;
        const Real ratio = Real(l + f.m + 1) / (q * ((l + 1) * (l + 1)));
        const Real next = term * ratio;
        if (ratio < 0.5 && next / (1 - ratio) <= tol2) break;
        term = next;
    }
    return sqrt(sum);
}

}  // namespace fekete
