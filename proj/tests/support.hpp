#pragma once

#include "fekete/real.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace testing {

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double abs_err(const fekete::Real& got, const fekete::Real& want) { return abs(got - want).to_double(); }

// Distinct sorted nodes in [lo, hi], at least `gap` apart.
inline std::vector<double> random_nodes(std::mt19937_64& rng, int n, double lo = -1, double hi = 1,
                                        double gap = 1e-2) {
    std::uniform_real_distribution<double> u(lo, hi);
    for (;;) {
        std::vector<double> x(static_cast<std::size_t>(n));
        for (auto& v : x) v = u(rng);
        std::sort(x.begin(), x.end());
        bool ok = true;
        for (std::size_t i = 1; i < x.size(); ++i) ok = ok && x[i] - x[i - 1] >= gap;
        if (ok) return x;
    }
}

}  // namespace testing
