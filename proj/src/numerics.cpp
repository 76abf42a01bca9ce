#include "fekete/numerics.hpp"

#include <cmath>

namespace fekete {

PrecisionContext::PrecisionContext(int digits) : digits_(digits) {
    if (digits < kMinDigits) {
        throw std::invalid_argument("precision must be at least " + std::to_string(kMinDigits) +
                                    " decimal digits, got " + std::to_string(digits));
    }
    // log2(10) bits per decimal digit, one so that `digits` digits survive a
    // decimal round trip, and guard bits so that O(n^2) rounding in LU and
    // Cholesky stays below the last requested digit.
    bits_ = static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 1 + kGuardBits;
}

Real PrecisionContext::pow10(double exponent) const { return pow(real(10), real(exponent)); }

PrecisionContext make_context(int digits) { return PrecisionContext(digits); }

VectorR cholesky_solve(const MatrixR& a, const VectorR& b, const PrecisionContext& ctx) {
    if (a.rows() != a.cols()) throw std::invalid_argument("cholesky_solve: matrix is not square");
    if (b.size() != a.rows()) throw std::invalid_argument("cholesky_solve: right-hand side has the wrong length");

    const MatrixR m = ctx.promote(a);
    Real scale = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) scale = std::max(scale, abs(m(i, j)));
    const Real tol = ctx.pow10(-ctx.digits() / 2.0) * scale;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = j + 1; i < m.rows(); ++i)
            if (abs(m(i, j) - m(j, i)) > tol) throw std::invalid_argument("cholesky_solve: matrix is not symmetric");

    const CholeskySolver<Real> chol(m);
    return chol.solve(VectorR(ctx.promote(b)));
}

LogDet lu_logdet(const MatrixR& a, const PrecisionContext& ctx) {
    return lu_logdet_of<Real>(ctx.promote(a));
}

}  // namespace fekete
