#include "fekete/gaussian_basis.hpp"

#include <algorithm>
#include <cmath>

namespace fekete {

namespace {

std::vector<Real> to_real(const PointSet& points, const PrecisionContext& ctx) {
    std::vector<Real> out;
    out.reserve(points.size());
    for (double x : points) out.push_back(ctx.real(x));
    return out;
}

}  // namespace

PointSet::PointSet(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!std::isfinite(nodes_[i])) throw std::invalid_argument("point set contains a non-finite node");
        if (i > 0 && !(nodes_[i - 1] < nodes_[i]))
            throw std::invalid_argument("point set must be strictly increasing");
    }
}

PointSet::PointSet(std::vector<double> nodes, const Interval& domain) : PointSet(std::move(nodes)) {
    if (!within(domain)) throw std::invalid_argument("point set leaves its domain");
}

PointSet PointSet::from_unsorted(std::vector<double> nodes) {
    std::sort(nodes.begin(), nodes.end());
    return PointSet(std::move(nodes));
}

bool PointSet::within(const Interval& domain) const {
    return std::all_of(nodes_.begin(), nodes_.end(), [&](double x) { return domain.contains(x); });
}

PointSet PointSet::with(double x) const {
    std::vector<double> nodes = nodes_;
    nodes.insert(std::upper_bound(nodes.begin(), nodes.end(), x), x);
    return PointSet(std::move(nodes));
}

Real phi(int ell, double x, double eps, const PrecisionContext& ctx) {
    return phi(ell, ctx.real(x), ctx.real(eps));
}

MatrixR phi_matrix(const PointSet& points, double eps, const PrecisionContext& ctx) {
    const auto nodes = to_real(points, ctx);
    return phi_matrix<Real>(nodes, ctx.real(eps));
}

Real truncated_kernel(double x, double y, int n, double eps, const PrecisionContext& ctx) {
    return truncated_kernel(ctx.real(x), ctx.real(y), n, ctx.real(eps));
}

double log_w(const PointSet& points, double eps) { return log_w<double>(points.nodes(), eps); }

Real log_w(const PointSet& points, double eps, const PrecisionContext& ctx) {
    const auto nodes = to_real(points, ctx);
    return log_w<Real>(nodes, ctx.real(eps));
}

Real det_factorization_check(const PointSet& points, double eps, const PrecisionContext& ctx) {
    const auto nodes = to_real(points, ctx);
    const Real e = ctx.real(eps);
    const LogDet det = lu_logdet_of(phi_matrix<Real>(nodes, e));
    if (det.sign == 0) throw PrecisionError("Phi is singular at working precision");

    Real closed_form = log_w<Real>(nodes, e);
    for (int l = 0; l < static_cast<int>(nodes.size()); ++l) closed_form += log_phi_coefficient(l, e);
    return abs(det.log_abs_det - closed_form);
}

bool tail_bound_applies(int n, double eps, double c_omega) {
    return n >= 1 && n >= 2.0 * eps * eps * c_omega * c_omega;
}

double log_tail_sup_bound(int n, double eps, double c_omega) {
    if (!(eps > 0) || !(c_omega > 0)) throw std::invalid_argument("tail bound needs eps > 0 and c_omega > 0");
    if (!tail_bound_applies(n, eps, c_omega))
        throw std::invalid_argument("tail bound requires n >= 2 eps^2 c_omega^2 (n = " + std::to_string(n) + ")");
    return n * std::log(std::sqrt(2.0) * eps * c_omega) - 0.5 * std::lgamma(n + 1.0);
}

double tail_sup_bound(int n, double eps, double c_omega) { return std::exp(log_tail_sup_bound(n, eps, c_omega)); }

Real tail_sum(double x, int n, double eps, double tol, const PrecisionContext& ctx) {
    if (!(tol > 0)) throw std::invalid_argument("tail_sum tolerance must be positive");
    if (n < 0) throw std::invalid_argument("tail_sum start index must be non-negative");
    if (!(eps > 0)) throw std::invalid_argument("tail_sum needs eps > 0");

    const Real xr = ctx.real(x);
    const Real er = ctx.real(eps);
    const Real rate = 2 * er * er * xr * xr;  // t_{l+1} / t_l = rate / (l + 1)
    const double start = std::max<double>(n, 4.0 * eps * eps * x * x);
    const Real tolerance = ctx.real(tol);

    Real term = phi(n, xr, er);
    term *= term;
    Real sum = ctx.real(0.0);
    for (long l = n;; ++l) {
        sum += term;
        const Real ratio = rate / (l + 1);
        const Real next = term * ratio;
        if (next == 0) break;
        if (l > start && ratio < 0.5 && next / (1 - ratio) < tolerance) break;
        term = next;
    }
    return sum;
}

}  // namespace fekete
