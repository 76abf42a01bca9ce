#pragma once

#include "fekete/real.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/LU>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fekete {

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixR = MatrixX<Real>;
using VectorR = VectorX<Real>;

/// Working precision ran out: a factorization or a clamped quantity lost
/// its meaning. Retry with more digits.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cholesky met a non-positive pivot.
class NotPositiveDefinite : public PrecisionError {
public:
    NotPositiveDefinite(std::string what, Eigen::Index pivot)
        : PrecisionError(std::move(what)), pivot_(pivot) {}
    Eigen::Index pivot() const { return pivot_; }

private:
    Eigen::Index pivot_;
};

/// Decimal working precision for every extended-precision computation.
class PrecisionContext {
public:
    static constexpr int kMinDigits = 16;
    static constexpr mpfr_prec_t kGuardBits = 16;

    explicit PrecisionContext(int digits);

    int digits() const { return digits_; }
    mpfr_prec_t bits() const { return bits_; }

    Real real(double v) const { return Real(v, bits_); }
    Real real(const Real& v) const { return Real(v, std::max(bits_, v.precision())); }
    Real parse(std::string_view text) const { return Real::parse(text, bits_); }

    /// 10^exponent at working precision.
    Real pow10(double exponent) const;

    template <class Derived>
    MatrixR promote(const Eigen::MatrixBase<Derived>& m) const {
        MatrixR out(m.rows(), m.cols());
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = real(Real(m(i, j)));
        return out;
    }

    friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

private:
    int digits_;
    mpfr_prec_t bits_;
};

PrecisionContext make_context(int digits);

/// Cholesky factorization that can be reused across right-hand sides.
template <class Scalar>
class CholeskySolver {
public:
    explicit CholeskySolver(const MatrixX<Scalar>& a) : llt_(a) {
        if (a.rows() != a.cols()) throw std::invalid_argument("Cholesky needs a square matrix");
        if (llt_.info() != Eigen::Success) {
            const Eigen::Index k = first_bad_pivot(a);
            throw NotPositiveDefinite("non-positive pivot at index " + std::to_string(k) +
                                          "; the matrix is not positive-definite at this precision",
                                      k);
        }
    }

    Eigen::Index size() const { return llt_.rows(); }

    VectorX<Scalar> solve(const VectorX<Scalar>& b) const { return llt_.solve(b); }
    MatrixX<Scalar> solve(const MatrixX<Scalar>& b) const { return llt_.solve(b); }

    /// L^{-1} b, with A = L L^T.
    VectorX<Scalar> solve_lower(const VectorX<Scalar>& b) const {
        return llt_.matrixL().solve(b);
    }

    auto matrix_l() const { return llt_.matrixL(); }

private:
    // Eigen does not report where the factorization stopped; redo it
    // unblocked on the failure path only.
    static Eigen::Index first_bad_pivot(const MatrixX<Scalar>& a) {
        MatrixX<Scalar> l = a;
        for (Eigen::Index j = 0; j < l.rows(); ++j) {
            Scalar d = l(j, j);
            for (Eigen::Index k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
            if (!(d > Scalar(0))) return j;
            using std::sqrt;
            l(j, j) = sqrt(d);
            for (Eigen::Index i = j + 1; i < l.rows(); ++i) {
                Scalar v = l(i, j);
                for (Eigen::Index k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
                l(i, j) = v / l(j, j);
            }
        }
        return l.rows();
    }

    Eigen::LLT<MatrixX<Scalar>> llt_;
};

/// Solves A x = b for symmetric positive-definite A at the context precision.
/// Throws std::invalid_argument for a non-square, non-symmetric or
/// mismatched system and NotPositiveDefinite on a non-positive pivot.
VectorR cholesky_solve(const MatrixR& a, const VectorR& b, const PrecisionContext& ctx);

struct LogDet {
    Real log_abs_det;
    int sign;  // -1, 0 or +1; 0 means singular at working precision
};

/// log|det A| and sign(det A) from LU with partial pivoting.
LogDet lu_logdet(const MatrixR& a, const PrecisionContext& ctx);

template <class Scalar>
LogDet lu_logdet_of(const MatrixX<Scalar>& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant needs a square matrix");
    Eigen::PartialPivLU<MatrixX<Scalar>> lu(a);
    const auto& u = lu.matrixLU();
    Real log_abs = 0;
    int sign = static_cast<int>(lu.permutationP().determinant());
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        const Scalar& d = u(i, i);
        if (d == Scalar(0)) return {Real(0), 0};
        if (d < Scalar(0)) sign = -sign;
        using std::abs;
        using std::log;
        log_abs += Real(log(abs(d)));
    }
    return {log_abs, sign};
}

}  // namespace fekete
