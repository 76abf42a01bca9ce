#include "fekete/fekete.hpp"

#include "fekete/baselines.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fekete {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 80;

bool strictly_increasing(const std::vector<double>& x) {
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i - 1] < x[i])) return false;
    return true;
}

// I(y) - I(x) without cancellation: each log term is log1p of the relative
// change of a pairwise distance.
double energy_change(const std::vector<double>& x, const std::vector<double>& y, double eps) {
    const std::size_t n = x.size();
    std::vector<double> s(n);
    double quadratic = 0;
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = y[i] - x[i];
        quadratic += s[i] * (y[i] + x[i]);
    }
    double pairs = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs += std::log1p((s[i] - s[j]) / (x[i] - x[j]));
    return eps * eps * quadratic - pairs;
}

std::vector<std::size_t> nodes_on_bounds(const std::vector<double>& x, const Interval& interval) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] <= interval.a() || x[i] >= interval.b()) out.push_back(i);
    return out;
}

}  // namespace

double energy(const PointSet& points, double eps) { return energy<double>(points.nodes(), eps); }

Eigen::VectorXd energy_gradient(const PointSet& points, double eps) {
    return energy_gradient<double>(points.nodes(), eps);
}

Eigen::MatrixXd energy_hessian(const PointSet& points, double eps) {
    return energy_hessian<double>(points.nodes(), eps);
}

EnergyProblem::EnergyProblem(int n_, double eps_, Interval interval_) : n(n_), eps(eps_), interval(interval_) {
    if (n < 1) throw std::invalid_argument("energy problem needs at least one node");
    if (!(eps > 0) || !std::isfinite(eps)) throw std::invalid_argument("energy problem needs eps > 0");
}

double kkt_residual(std::span<const double> x, const Eigen::VectorXd& g, const Interval& interval) {
    double r = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double gi = g(static_cast<Eigen::Index>(i));
        double ri = std::abs(gi);
        if (x[i] <= interval.a()) ri = std::max(-gi, 0.0);
        else if (x[i] >= interval.b()) ri = std::max(gi, 0.0);
        r = std::max(r, ri);
    }
    return r;
}

SolveReport solve_fekete(const EnergyProblem& problem, const SolverOptions& options) {
    return solve_fekete(problem, options, chebyshev_points(problem.n, problem.interval));
}

SolveReport solve_fekete(const EnergyProblem& problem, const SolverOptions& options, const PointSet& start) {
    if (!(options.tol > 0)) throw std::invalid_argument("solver tolerance must be positive");
    if (static_cast<int>(start.size()) != problem.n || !start.within(problem.interval))
        throw std::invalid_argument("starting point does not fit the problem");

    const Interval& box = problem.interval;
    const double eps = problem.eps;
    const auto n = static_cast<Eigen::Index>(problem.n);

    std::vector<double> x(start.begin(), start.end());
    SolveReport report;
    report.energy_history.push_back(energy<double>(x, eps));

    auto finish = [&](bool converged, double residual) {
        report.points = PointSet(x);
        report.final_grad_norm = residual;
        report.active_bounds = nodes_on_bounds(x, box);
        report.converged = converged;
        return report;
    };

    std::vector<double> trial(x.size());
    for (int iter = 0;; ++iter) {
        const Eigen::VectorXd g = energy_gradient<double>(x, eps);
        const double residual = kkt_residual(x, g, box);
        if (residual <= options.tol) return finish(true, residual);
        if (iter >= options.max_iter) {
            throw NonConvergence("Fekete solver: no KKT point within " + std::to_string(options.max_iter) +
                                     " iterations (residual " + std::to_string(residual) + ")",
                                 finish(false, residual));
        }

        // Nodes within `margin` of an endpoint whose gradient points out of
        // the box are held by the bound; the rest take a reduced Newton step.
        double projected_step = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double p = std::clamp(x[i] - g(i), box.a(), box.b());
            projected_step = std::max(projected_step, std::abs(p - x[i]));
        }
        const double margin = std::min(1e-3 * box.length(), projected_step);

        std::vector<Eigen::Index> free;
        std::vector<bool> held(x.size(), false);
        for (Eigen::Index i = 0; i < n; ++i) {
            held[i] = (x[i] <= box.a() + margin && g(i) > 0) || (x[i] >= box.b() - margin && g(i) < 0);
            if (!held[i]) free.push_back(i);
        }

        const Eigen::MatrixXd h = energy_hessian<double>(x, eps);
        Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < n; ++i)
            if (held[i]) d(i) = -g(i) / h(i, i);
        if (!free.empty()) {
            const auto m = static_cast<Eigen::Index>(free.size());
            Eigen::MatrixXd hf(m, m);
            Eigen::VectorXd gf(m);
            for (Eigen::Index r = 0; r < m; ++r) {
                gf(r) = g(free[r]);
                for (Eigen::Index c = 0; c < m; ++c) hf(r, c) = h(free[r], free[c]);
            }
            const Eigen::VectorXd df = hf.llt().solve(-gf);
            for (Eigen::Index r = 0; r < m; ++r) d(free[r]) = df(r);
        }

        bool accepted = false;
        double t = 1;
        for (int k = 0; k < kMaxBacktracks && !accepted; ++k, t *= 0.5) {
            for (Eigen::Index i = 0; i < n; ++i) trial[i] = std::clamp(x[i] + t * d(i), box.a(), box.b());
            if (!strictly_increasing(trial)) continue;
            double model = 0;
            for (Eigen::Index i = 0; i < n; ++i) model += g(i) * (trial[i] - x[i]);
            if (model >= 0) continue;
            accepted = energy_change(x, trial, eps) <= kArmijo * model;
        }
        if (!accepted) {
            throw NonConvergence("Fekete solver: line search stalled (residual " + std::to_string(residual) + ")",
                                 finish(false, residual));
        }
        x.swap(trial);
        report.iterations = iter + 1;
        report.energy_history.push_back(energy<double>(x, eps));
    }
}

std::vector<PointSet> tensor_fekete_axes(std::span<const int> n_per_dim, std::span<const double> eps_per_dim,
                                         const Rectangle& rectangle, const SolverOptions& options) {
    if (n_per_dim.empty() || n_per_dim.size() != eps_per_dim.size() || n_per_dim.size() != rectangle.size())
        throw std::invalid_argument("tensor_fekete: per-dimension lists must be non-empty and of equal length");
    std::vector<PointSet> axes;
    for (std::size_t i = 0; i < n_per_dim.size(); ++i)
        axes.push_back(solve_fekete(EnergyProblem(n_per_dim[i], eps_per_dim[i], rectangle[i]), options).points);
    return axes;
}

Eigen::MatrixXd tensor_product(std::span<const PointSet> axes) {
    const auto d = static_cast<Eigen::Index>(axes.size());
    Eigen::Index total = 1;
    for (const auto& axis : axes) total *= static_cast<Eigen::Index>(axis.size());
    Eigen::MatrixXd out(total, d);
    for (Eigen::Index row = 0; row < total; ++row) {
        Eigen::Index rest = row;
        for (Eigen::Index k = d - 1; k >= 0; --k) {
            const auto size = static_cast<Eigen::Index>(axes[k].size());
            out(row, k) = axes[k][static_cast<std::size_t>(rest % size)];
            rest /= size;
        }
    }
    return out;
}

Eigen::MatrixXd tensor_fekete(std::span<const int> n_per_dim, std::span<const double> eps_per_dim,
                              const Rectangle& rectangle, const SolverOptions& options) {
    const auto axes = tensor_fekete_axes(n_per_dim, eps_per_dim, rectangle, options);
    return tensor_product(axes);
}

}  // namespace fekete
