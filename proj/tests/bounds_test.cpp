#include "doctest.h"
#include "support.hpp"

#include "fekete/bounds.hpp"

#include <cmath>
#include <numbers>

using namespace fekete;

namespace {
// 60-digit mpmath evaluations of the closed forms
constexpr double kC1 = 2.52647511098425880516004204043;
constexpr double kRate2 = 11.5500004963001690502001699477;       // n = 2, eps = c = |f| = 1
constexpr double kRate4 = 13.2004577132528612589254873717;       // n = 4
constexpr double kBesselAt11 = 0.308508322553671039533384319267; // e^-2 I0(2)
constexpr double kFillBound = 0.766237369911457598353449782198;  // h = 0.1 on [-1, 1]
constexpr double kNorm_m0_e1 = 1.28402541668774148407342056806;  // e^{1/4}
constexpr double kNormSq_m0_e2 = 1.13314845306682631682900722781; // e^{1/8}
constexpr double kNorm_m5_e1 = 5.54418841443383221885960253678;
constexpr double kNorm_m10_e2 = 0.100602623939389130023372639174;
constexpr double kNorm_m15_e1 = 48370.4480166487471793860302641;
}  // namespace

TEST_CASE("generic bound") {
    CHECK(generic_uniform_bound(2, 2, std::sqrt(2.0), 1) == doctest::Approx(6 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(generic_uniform_bound(3, 3, 0.5, 0) == 0);
    CHECK_THROWS_AS(generic_uniform_bound(3, -1, 0.5, 1), std::invalid_argument);
}

TEST_CASE("explicit rate") {
    CHECK(rate_constant_c1() == doctest::Approx(kC1).epsilon(1e-15));
    CHECK(rate_constant_c1() == doctest::Approx(2.5264).epsilon(1e-4));
    CHECK(testing::rel_err(gaussian_rate_bound(2, 1, 1, 1), kRate2) < 1e-13);
    CHECK(testing::rel_err(gaussian_rate_bound(4, 1, 1, 1), kRate4) < 1e-13);
    CHECK(gaussian_rate_bound(4, 1, 1, 0) == 0);
    CHECK_THROWS_AS(gaussian_rate_bound(1, 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_rate_bound(7, 2, 1, 1), std::invalid_argument);

    // decreasing once n > e C2^2
    const double start = std::numbers::e * std::pow(rate_constant_c2(1, 1), 2);
    for (int n = static_cast<int>(std::ceil(start)); n < 60; ++n)
        CHECK(log_gaussian_rate_bound(n + 1, 1, 1, 1) < log_gaussian_rate_bound(n, 1, 1, 1));
    // super-exponential decay: log bound / (n log n) -> -1/2, with a
    // log(C2) / log(n) correction that is still 0.22 at n = 50 for eps = c = 1
    auto slope = [](int n, double eps) { return log_gaussian_rate_bound(n, eps, 1, 1) / (n * std::log(n)); };
    CHECK(std::abs(slope(50, 0.5) + 0.5) < 0.15);
    CHECK(std::abs(slope(50, 1) + 0.5) == doctest::Approx(0.2361).epsilon(1e-3));
    CHECK(std::abs(slope(10000, 1) + 0.5) < 0.15);
    CHECK(slope(100, 1) < slope(50, 1));
    CHECK(std::isfinite(log_gaussian_rate_bound(2000, 1, 1, 1)));
}

TEST_CASE("rate bound dominates the tail-based bound with Lambda = n") {
    for (double eps : {1.0, 2.0})
        for (int n = static_cast<int>(std::ceil(2 * eps * eps)); n <= 40; ++n)
            CHECK(generic_uniform_bound(n, n, tail_sup_bound(n, eps, 1), 1) <=
                  gaussian_rate_bound(n, eps, 1, 1) * (1 + 1e-12));
}

TEST_CASE("subspace bound") {
    CHECK_THROWS_AS(subspace_bound(4, AlphaSequence::constant(1), 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(subspace_bound(4, AlphaSequence::constant(0.5), 1, 1, 1), std::invalid_argument);
    const AlphaSequence decreasing([](int l) { return -std::log(static_cast<double>(l)) + 5; });
    CHECK_THROWS_AS(subspace_bound(4, decreasing, 1, 1, 1), std::invalid_argument);

    CHECK(subspace_bound(6, AlphaSequence::linear(), 1, 1, 1) ==
          doctest::Approx(gaussian_rate_bound(6, 1, 1, 1) / 6).epsilon(1e-14));
    CHECK(subspace_bound(6, AlphaSequence::linear(), 1, 1, 1, AlphaIndex::n_plus_one) ==
          doctest::Approx(gaussian_rate_bound(6, 1, 1, 1) / 7).epsilon(1e-14));

    const auto bessel = AlphaSequence::bessel(1);
    CHECK(bessel(4) == doctest::Approx(std::sqrt(24.0 * 16)).epsilon(1e-14));
    CHECK(subspace_bound(4, bessel, 1, 1, 1) == doctest::Approx(kRate4 / std::sqrt(384.0)).epsilon(1e-13));
    CHECK(subspace_bound(4, bessel, 1, 1, 0) == 0);
}

TEST_CASE("Bessel subspace kernel") {
    const auto ctx = make_context(40);
    CHECK(abs(bessel_subspace_kernel(0, 0, 1, ctx) - 1) < ctx.pow10(-39));
    CHECK(std::abs(bessel_subspace_kernel(1, 1, 1, ctx).to_double() - kBesselAt11) < 1e-15);
    for (auto [x, y] : {std::pair{0.3, -0.8}, std::pair{-1.0, 0.45}, std::pair{0.9, 0.9}})
        CHECK(bessel_subspace_kernel(x, y, 1.5, ctx) == bessel_subspace_kernel(y, x, 1.5, ctx));

    // sum_l phi_l(x) phi_l(y) / alpha_l^2 with the Bessel weights, summed directly
    const Real direct = [&] {
        Real s = ctx.real(0.0);
        for (int l = 0; l < 80; ++l) {
            const Real a2 = l == 0 ? ctx.real(1.0) : exp(2 * ctx.real(AlphaSequence::bessel(2).log_alpha(l)));
            s += phi(l, 0.7, 2.0, ctx) * phi(l, -0.4, 2.0, ctx) / a2;
        }
        return s;
    }();
    CHECK(abs(bessel_subspace_kernel(0.7, -0.4, 2.0, ctx) - direct) < Real(1e-14));
}

TEST_CASE("tensor bound") {
    const std::vector<int> n1{5};
    const std::vector<double> one{1}, ones{1, 1};
    CHECK(tensor_bound(n1, one, one, 1) == doctest::Approx(gaussian_rate_bound(5, 1, 1, 1)).epsilon(1e-14));
    const std::vector<int> n55{5, 5};
    CHECK(tensor_bound(n55, ones, ones, 1) == doctest::Approx(2 * gaussian_rate_bound(5, 1, 1, 1)).epsilon(1e-14));
    const std::vector<int> n24{2, 4};
    CHECK(tensor_bound(n24, ones, ones, 1) == doctest::Approx(kRate2 + kRate4).epsilon(1e-13));
    const std::vector<int> bad{1, 4};
    CHECK_THROWS_AS(tensor_bound(bad, ones, ones, 1), std::invalid_argument);
}

TEST_CASE("fill-distance bound") {
    const Interval box(-1, 1);
    CHECK(fill_distance_constant(box) == doctest::Approx(1.0 / 24));
    CHECK(fill_distance_constant(Interval(0, 100)) == doctest::Approx(1.0 / 8));
    CHECK(fill_distance_bound(0.1, box, 1) == doctest::Approx(kFillBound).epsilon(1e-14));
    CHECK(fill_distance_bound(0.1, box, 0) == 0);
    CHECK_THROWS_AS(fill_distance_bound(1.0, box, 1), std::invalid_argument);
    CHECK_THROWS_AS(fill_distance_bound(0.0, box, 1), std::invalid_argument);
}

TEST_CASE("test functions") {
    CHECK(TestFunction(5, 1)(0.0) == 0);
    CHECK(TestFunction(0, 2)(0.0) == 1);
    CHECK(TestFunction(5, 1)(1.0) == 1);
    const auto ctx = make_context(40);
    CHECK(abs(test_function_eval(TestFunction(3, 2), 0.5, ctx) - ctx.real(0.125) * exp(ctx.real(-0.5))) <
          ctx.pow10(-38));
    CHECK_THROWS_AS(TestFunction(-1, 1), std::invalid_argument);
}

TEST_CASE("test function norms") {
    const auto ctx = make_context(40);
    auto norm = [&](int m, double eps) { return test_function_norm(TestFunction(m, eps), 1e-30, ctx); };
    CHECK(std::abs(norm(0, 1).to_double() - kNorm_m0_e1) < 1e-15);
    CHECK(std::abs(pow(norm(0, 2), 2).to_double() - kNormSq_m0_e2) < 1e-15);
    CHECK(std::abs(norm(5, 1).to_double() / kNorm_m5_e1 - 1) < 1e-15);
    CHECK(std::abs(norm(10, 2).to_double() / kNorm_m10_e2 - 1) < 1e-15);
    CHECK(std::abs(norm(15, 1).to_double() / kNorm_m15_e1 - 1) < 1e-15);
    // not monotone in m: the (2 eps^2)^(-m) prefactor wins for small m
    CHECK(std::abs(norm(1, 1).to_double() - 1.11199862995648) < 1e-13);
    CHECK(std::abs(norm(1, 2).to_double() - 0.399185422094197) < 1e-13);
    for (int m = 1; m < 15; ++m) CHECK(norm(m + 1, 1) > norm(m, 1));
    CHECK_THROWS_AS(test_function_norm(TestFunction(1, 1), 0, ctx), std::invalid_argument);
}

TEST_CASE("norm agrees with the RKHS norm of an interpolant of f") {
    // |s_f|^2 = f^T K^{-1} f increases toward |f|^2 and never exceeds it
    const auto ctx = make_context(80);
    const TestFunction f(2, 1.0);
    const GaussianKernel k(1.0);
    std::vector<Real> x;
    for (int i = 0; i < 14; ++i) x.push_back(ctx.real(-1 + 2.0 * i / 13));
    VectorR fv(14);
    for (int i = 0; i < 14; ++i) fv(i) = f(x[i]);
    MatrixR g(14, 14);
    for (int i = 0; i < 14; ++i)
        for (int j = 0; j < 14; ++j) g(i, j) = k(x[i], x[j]);
    const Real s2 = fv.dot(g.llt().solve(fv));
    const Real f2 = pow(test_function_norm(f, 1e-40, ctx), 2);
    CHECK(s2 <= f2);
    CHECK(s2 > f2 * 0.99);
}

TEST_CASE("Bessel subspace kernel gives SPD Gram matrices") {
    const auto ctx = make_context(40);
    std::mt19937_64 rng(47);
    for (int n = 1; n <= 6; ++n) {
        const auto x = testing::random_nodes(rng, n, -1, 1, 0.05);
        MatrixR g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = bessel_subspace_kernel(x[i], x[j], 1.0, ctx);
        CHECK_NOTHROW(CholeskySolver<Real>{g});
    }
}
