#include "fekete/baselines.hpp"

#include "fekete/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fekete {

namespace {

// mid + half * t with t = (2i - (m - 1)) / (m - 1): exactly symmetric about
// the midpoint, endpoints pinned.
std::vector<double> symmetric_uniform(int m, const Interval& interval) {
    std::vector<double> x(static_cast<std::size_t>(m));
    if (m == 1) {
        x[0] = interval.midpoint();
        return x;
    }
    const double mid = interval.midpoint();
    const double half = 0.5 * interval.length();
    for (int i = 0; i < m; ++i) {
        const double t = static_cast<double>(2 * i - (m - 1)) / (m - 1);
        x[static_cast<std::size_t>(i)] = mid + half * t;
    }
    x.front() = interval.a();
    x.back() = interval.b();
    return x;
}

}  // namespace

PointSet chebyshev_points(int n, const Interval& interval) {
    if (n < 1) throw std::invalid_argument("chebyshev_points needs n >= 1");
    // cos((2k - 1) pi / (2n)) = sin((n + 1 - 2k) pi / (2n)); the sine form is
    // exactly odd in the integer numerator, so the middle node is exactly 0.
    std::vector<double> x;
    x.reserve(static_cast<std::size_t>(n));
    const double mid = interval.midpoint();
    const double half = 0.5 * interval.length();
    for (int k = n; k >= 1; --k) {
        const double j = n + 1 - 2 * k;
        x.push_back(mid + half * std::sin(std::numbers::pi * j / (2.0 * n)));
    }
    return PointSet(std::move(x));
}

PointSet equispaced_points(int n, const Interval& interval) {
    if (n < 2) throw std::invalid_argument("equispaced_points needs n >= 2");
    return PointSet(symmetric_uniform(n, interval));
}

std::vector<double> uniform_grid(int size, const Interval& interval) {
    if (size < 1) throw std::invalid_argument("grid needs at least one point");
    return symmetric_uniform(size, interval);
}

double fill_distance(const PointSet& points, const Interval& interval) {
    if (points.empty()) throw std::invalid_argument("fill distance of an empty point set");
    if (!points.within(interval)) throw std::invalid_argument("fill distance: points leave the interval");
    double h = std::max(points[0] - interval.a(), interval.b() - points[points.size() - 1]);
    for (std::size_t i = 1; i < points.size(); ++i) h = std::max(h, 0.5 * (points[i] - points[i - 1]));
    return h;
}

PointSet GreedyTrace::prefix(std::size_t count) const {
    if (count > nodes.size()) throw std::out_of_range("greedy trace is shorter than the requested prefix");
    return PointSet::from_unsorted(std::vector<double>(nodes.begin(), nodes.begin() + static_cast<long>(count)));
}

GreedyTrace p_greedy(int n, const GaussianKernel& kernel, const Interval& interval, int grid_size,
                     const PrecisionContext& ctx) {
    if (n < 1) throw std::invalid_argument("p_greedy needs n >= 1");
    if (grid_size < n) throw std::invalid_argument("p_greedy needs grid_size >= n");

    const std::vector<double> grid = uniform_grid(grid_size, interval);
    const auto m = grid.size();
    std::vector<Real> xr;
    xr.reserve(m);
    for (double x : grid) xr.push_back(ctx.real(x));

    // Newton basis: P^2 after k selections is K(x, x) - sum_{j<k} v_j(x)^2,
    // v_k(x) = (K(x, x_k) - sum_{j<k} v_j(x) v_j(x_k)) / P_{k}(x_k).
    std::vector<Real> p2(m, ctx.real(1.0));
    std::vector<std::vector<Real>> basis;
    std::vector<bool> taken(m, false);
    const Real clamp_tol = ctx.pow10(-ctx.digits() / 2.0);

    GreedyTrace trace;
    trace.digits = ctx.digits();

    auto argmax = [&] {
        GridArgmax best(interval.midpoint(), ctx);
        for (std::size_t i = 0; i < m; ++i)
            if (!taken[i]) best.offer(sqrt(p2[i]), grid[i], i);
        return best;
    };

    GridArgmax best = argmax();
    for (int step = 0; step < n; ++step) {
        const std::size_t s = best.index();
        if (!(p2[s] > 0))
            throw PrecisionError("p_greedy: power function vanished on the grid at step " + std::to_string(step) +
                                 " with " + std::to_string(ctx.digits()) + " digits; increase the working precision");
        taken[s] = true;
        trace.nodes.push_back(grid[s]);
        trace.grid_indices.push_back(s);

        const Real norm = sqrt(p2[s]);
        std::vector<Real> v(m);
        for (std::size_t i = 0; i < m; ++i) {
            Real num = kernel(xr[i], xr[s]);
            for (const auto& column : basis) num -= column[i] * column[s];
            v[i] = num / norm;
        }
        for (std::size_t i = 0; i < m; ++i) {
            p2[i] -= v[i] * v[i];
            if (taken[i] || p2[i] < 0) {
                if (!taken[i] && p2[i] < -clamp_tol)
                    throw PrecisionError("p_greedy: negative squared power function with " +
                                         std::to_string(ctx.digits()) + " digits; increase the working precision");
                p2[i] = ctx.real(0.0);
            }
        }
        basis.push_back(std::move(v));

        if (static_cast<std::size_t>(step + 1) < m) {
            best = argmax();
            trace.power_maxima.push_back(best.value());
        } else {
            trace.power_maxima.push_back(ctx.real(0.0));
        }
    }
    return trace;
}

}  // namespace fekete
