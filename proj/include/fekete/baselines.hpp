#pragma once

#include "fekete/gaussian_basis.hpp"
#include "fekete/numerics.hpp"

#include <cstddef>
#include <vector>

namespace fekete {

/// cos((2k - 1) pi / (2n)), k = 1..n, mapped to [a, b], ascending.
PointSet chebyshev_points(int n, const Interval& interval);

/// a + (b - a) k / (n - 1), k = 0..n-1. Needs n >= 2.
PointSet equispaced_points(int n, const Interval& interval);

/// Equispaced grid of `size` points including both endpoints; a single
/// point grid is the midpoint.
std::vector<double> uniform_grid(int size, const Interval& interval);

/// sup_{x in [a, b]} min_k |x - x_k|, computed exactly from the gaps.
double fill_distance(const PointSet& points, const Interval& interval);

struct GreedyTrace {
    /// Nodes in selection order.
    std::vector<double> nodes;
    /// Grid indices of the selected nodes.
    std::vector<std::size_t> grid_indices;
    /// max_grid P after each selection; entry k belongs to the first k + 1 nodes.
    std::vector<Real> power_maxima;
    int digits = 0;

    /// The first `count` selections, sorted.
    PointSet prefix(std::size_t count) const;
};

/// Greedy maximisation of the power function over `uniform_grid(grid_size)`.
/// Ties go to the grid point nearest the interval midpoint, then to the
/// smaller coordinate.
GreedyTrace p_greedy(int n, const GaussianKernel& kernel, const Interval& interval, int grid_size,
                     const PrecisionContext& ctx);

}  // namespace fekete
