#include "fekete/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fekete {

namespace {

std::vector<Real> to_real(const PointSet& points, const PrecisionContext& ctx) {
    std::vector<Real> out;
    out.reserve(points.size());
    for (double x : points) out.push_back(ctx.real(x));
    return out;
}

VectorR kernel_vector(const std::vector<Real>& nodes, const GaussianKernel& kernel, const Real& x) {
    VectorR k(static_cast<Eigen::Index>(nodes.size()));
    for (std::size_t i = 0; i < nodes.size(); ++i) k(static_cast<Eigen::Index>(i)) = kernel(x, nodes[i]);
    return k;
}

Real max_abs(const VectorR& v) {
    Real m = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, abs(v(i)));
    return m;
}

std::string precision_advice(const PrecisionContext& ctx) {
    return " at " + std::to_string(ctx.digits()) + " digits; increase the working precision";
}

// Product of strides below `mode`: element (j along mode) of fiber
// (outer, inner) sits at outer * size * stride + j * stride + inner.
struct ModeLayout {
    Eigen::Index outer;
    Eigen::Index size;
    Eigen::Index stride;
};

ModeLayout mode_layout(const std::vector<PointSet>& axes, std::size_t mode) {
    ModeLayout m{1, static_cast<Eigen::Index>(axes[mode].size()), 1};
    for (std::size_t k = 0; k < mode; ++k) m.outer *= static_cast<Eigen::Index>(axes[k].size());
    for (std::size_t k = mode + 1; k < axes.size(); ++k) m.stride *= static_cast<Eigen::Index>(axes[k].size());
    return m;
}

template <class Apply>
void for_each_fiber(VectorR& data, const ModeLayout& m, Apply apply) {
    VectorR fiber(m.size);
    for (Eigen::Index o = 0; o < m.outer; ++o) {
        for (Eigen::Index in = 0; in < m.stride; ++in) {
            const Eigen::Index base = o * m.size * m.stride + in;
            for (Eigen::Index j = 0; j < m.size; ++j) fiber(j) = data(base + j * m.stride);
            const VectorR out = apply(fiber);
            for (Eigen::Index j = 0; j < m.size; ++j) data(base + j * m.stride) = out(j);
        }
    }
}

}  // namespace

int auto_digits(int n) { return std::max(30, static_cast<int>(std::ceil(4.0 * n))); }

MatrixR gram(const PointSet& points, const GaussianKernel& kernel, const PrecisionContext& ctx) {
    const auto nodes = to_real(points, ctx);
    return gram<Real>(nodes, kernel);
}

// --- Interpolant ------------------------------------------------------------

Interpolant::Interpolant(PointSet nodes, GaussianKernel kernel, VectorR coeffs, PrecisionContext ctx)
    : nodes_(std::move(nodes)), kernel_(kernel), coeffs_(std::move(coeffs)), ctx_(ctx), nodes_r_(to_real(nodes_, ctx)) {
    if (static_cast<std::size_t>(coeffs_.size()) != nodes_.size())
        throw std::invalid_argument("interpolant needs one coefficient per node");
}

Real Interpolant::operator()(double x) const { return (*this)(ctx_.real(x)); }

Real Interpolant::operator()(const Real& x) const {
    Real s = ctx_.real(0.0);
    for (std::size_t k = 0; k < nodes_r_.size(); ++k) s += coeffs_(static_cast<Eigen::Index>(k)) * kernel_(x, nodes_r_[k]);
    return s;
}

Interpolant fit(const PointSet& points, const VectorR& values, const GaussianKernel& kernel,
                const PrecisionContext& ctx) {
    if (static_cast<std::size_t>(values.size()) != points.size())
        throw std::invalid_argument("fit: need one value per node");
    const MatrixR k = gram(points, kernel, ctx);
    const VectorR f = ctx.promote(values);

    std::optional<CholeskySolver<Real>> chol;
    try {
        chol.emplace(k);
    } catch (const NotPositiveDefinite& e) {
        throw NotPositiveDefinite(std::string("Gram matrix ") + e.what() + precision_advice(ctx), e.pivot());
    }
    VectorR c = chol->solve(f);

    const Real residual = max_abs(VectorR(k * c - f));
    if (residual > ctx.pow10(-ctx.digits() / 2.0) * max_abs(f))
        throw PrecisionError("Gram solve residual " + residual.to_string(6) + precision_advice(ctx));
    return Interpolant(points, kernel, std::move(c), ctx);
}

Interpolant fit(const PointSet& points, std::span<const double> values, const GaussianKernel& kernel,
                const PrecisionContext& ctx) {
    VectorR f(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) f(static_cast<Eigen::Index>(i)) = ctx.real(values[i]);
    return fit(points, f, kernel, ctx);
}

// --- Power function ---------------------------------------------------------

PowerFunction::PowerFunction(const PointSet& points, const GaussianKernel& kernel, const PrecisionContext& ctx)
    : kernel_(kernel), ctx_(ctx), nodes_(to_real(points, ctx)), clamp_tol_(ctx.pow10(-ctx.digits() / 2.0)) {
    if (nodes_.empty()) return;
    try {
        chol_.emplace(gram<Real>(nodes_, kernel_));
    } catch (const NotPositiveDefinite& e) {
        throw NotPositiveDefinite(std::string("Gram matrix ") + e.what() + precision_advice(ctx_), e.pivot());
    }
}

Real PowerFunction::squared(double x) const {
    const Real one = ctx_.real(1.0);
    if (!chol_) return one;
    const VectorR z = chol_->solve_lower(kernel_vector(nodes_, kernel_, ctx_.real(x)));
    Real p2 = one - z.squaredNorm();
    if (p2 < 0) {
        if (p2 < -clamp_tol_)
            throw PrecisionError("power function argument " + p2.to_string(6) + " is negative" +
                                 precision_advice(ctx_));
        p2 = ctx_.real(0.0);
    }
    return p2;
}

Real power_function(const PointSet& points, const GaussianKernel& kernel, double x, const PrecisionContext& ctx) {
    return PowerFunction(points, kernel, ctx)(x);
}

GridArgmax::GridArgmax(double midpoint, const PrecisionContext& ctx)
    : midpoint_(midpoint), tie_tol_(ctx.pow10(-ctx.digits() / 2.0)), value_(ctx.real(0.0)) {}

void GridArgmax::offer(const Real& value, double x, std::size_t index) {
    if (!index_) {
        value_ = value;
        x_ = x;
        index_ = index;
        return;
    }
    const Real scale = std::max(abs(value), abs(value_));
    bool take = false;
    if (abs(value - value_) <= tie_tol_ * scale) {
        const double dn = std::abs(x - midpoint_);
        const double db = std::abs(x_ - midpoint_);
        take = dn < db || (dn == db && x < x_);
    } else {
        take = value > value_;
    }
    if (take) {
        value_ = value;
        x_ = x;
        index_ = index;
    }
}

GridMax max_power_on_grid(const PointSet& points, const GaussianKernel& kernel, std::span<const double> grid,
                          const PrecisionContext& ctx) {
    if (grid.empty()) throw std::invalid_argument("max_power_on_grid: empty grid");
    const PowerFunction p(points, kernel, ctx);
    const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
    GridArgmax best(0.5 * (*lo + *hi), ctx);
    for (std::size_t i = 0; i < grid.size(); ++i) best.offer(p(grid[i]), grid[i], i);
    return {best.value(), best.x(), best.index()};
}

// --- Lagrange functions -----------------------------------------------------

Eigen::VectorXd lagrange_values(const PointSet& points, double eps, double x) {
    return lagrange_values<double>(points.nodes(), eps, x);
}

double lebesgue_constant(const PointSet& points, double eps, std::span<const double> grid) {
    double lambda = 0;
    for (double x : grid) lambda = std::max(lambda, lagrange_values(points, eps, x).cwiseAbs().sum());
    return lambda;
}

// --- Tensor products --------------------------------------------------------

TensorInterpolant::TensorInterpolant(std::vector<PointSet> axes, std::vector<GaussianKernel> kernels, VectorR coeffs,
                                     PrecisionContext ctx)
    : axes_(std::move(axes)), kernels_(std::move(kernels)), coeffs_(std::move(coeffs)), ctx_(ctx) {}

Real TensorInterpolant::operator()(std::span<const double> x) const {
    if (x.size() != axes_.size()) throw std::invalid_argument("tensor interpolant: point has the wrong dimension");
    // Contract the last mode first; `data` shrinks to a scalar.
    VectorR data = coeffs_;
    for (std::size_t mode = axes_.size(); mode-- > 0;) {
        const auto n = static_cast<Eigen::Index>(axes_[mode].size());
        const Real xr = ctx_.real(x[mode]);
        VectorR k(n);
        for (Eigen::Index j = 0; j < n; ++j) k(j) = kernels_[mode](xr, ctx_.real(axes_[mode][static_cast<std::size_t>(j)]));
        const Eigen::Index outer = data.size() / n;
        VectorR next(outer);
        for (Eigen::Index o = 0; o < outer; ++o) next(o) = data.segment(o * n, n).dot(k);
        data = std::move(next);
    }
    return data(0);
}

TensorInterpolant tensor_fit(std::vector<PointSet> axes, std::vector<GaussianKernel> kernels, const VectorR& values,
                             const PrecisionContext& ctx) {
    if (axes.empty() || axes.size() != kernels.size())
        throw std::invalid_argument("tensor_fit: need one kernel per axis");
    Eigen::Index total = 1;
    for (const auto& a : axes) total *= static_cast<Eigen::Index>(a.size());
    if (values.size() != total) throw std::invalid_argument("tensor_fit: value tensor has the wrong size");

    const VectorR f = ctx.promote(values);
    VectorR c = f;
    std::vector<MatrixR> grams;
    for (std::size_t mode = 0; mode < axes.size(); ++mode) {
        grams.push_back(gram(axes[mode], kernels[mode], ctx));
        std::optional<CholeskySolver<Real>> chol;
        try {
            chol.emplace(grams.back());
        } catch (const NotPositiveDefinite& e) {
            throw NotPositiveDefinite("Gram matrix of axis " + std::to_string(mode) + " " + e.what() +
                                          precision_advice(ctx),
                                      e.pivot());
        }
        for_each_fiber(c, mode_layout(axes, mode), [&](const VectorR& fiber) { return chol->solve(fiber); });
    }

    // Interpolation conditions at every grid point via the same mode products.
    VectorR back = c;
    for (std::size_t mode = 0; mode < axes.size(); ++mode)
        for_each_fiber(back, mode_layout(axes, mode), [&](const VectorR& fiber) { return VectorR(grams[mode] * fiber); });
    const Real residual = max_abs(VectorR(back - f));
    if (residual > ctx.pow10(-ctx.digits() / 2.0) * max_abs(f))
        throw PrecisionError("tensor Gram solve residual " + residual.to_string(6) + precision_advice(ctx));

    return TensorInterpolant(std::move(axes), std::move(kernels), std::move(c), ctx);
}

Real tensor_power(std::span<const PointSet> axes, std::span<const GaussianKernel> kernels,
                  std::span<const double> x, const PrecisionContext& ctx) {
    if (axes.size() != kernels.size() || axes.size() != x.size())
        throw std::invalid_argument("tensor_power: axes, kernels and point must share a dimension");
    Real reproduced = ctx.real(1.0);
    for (std::size_t i = 0; i < axes.size(); ++i)
        reproduced *= 1 - PowerFunction(axes[i], kernels[i], ctx).squared(x[i]);
    Real p2 = 1 - reproduced;
    if (p2 < 0) p2 = ctx.real(0.0);
    return sqrt(p2);
}

}  // namespace fekete
