#pragma once

#include <mpfr.h>

#include <Eigen/Core>

#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

namespace fekete {

/// Binary floating-point number backed by MPFR.
///
/// Every value carries its own precision (in bits). Arithmetic between two
/// values rounds to the larger of the two precisions, and unary functions
/// round to the precision of their argument. Values converted from hardware
/// types get 53 bits, which represents every double exactly, so mixing in
/// literals such as 0, 1 or 0.5 never lowers the working precision.
class Real {
public:
    static constexpr mpfr_prec_t kHardwareBits = 53;

    Real() { init(kHardwareBits); mpfr_set_zero(v_, 1); }
    Real(double d) { init(kHardwareBits); mpfr_set_d(v_, d, MPFR_RNDN); }
    template <std::signed_integral I>
    Real(I i) { init(kHardwareBits); mpfr_set_si(v_, static_cast<long>(i), MPFR_RNDN); }
    template <std::unsigned_integral U>
    Real(U u) { init(kHardwareBits); mpfr_set_ui(v_, static_cast<unsigned long>(u), MPFR_RNDN); }

    Real(double d, mpfr_prec_t bits) { init(bits); mpfr_set_d(v_, d, MPFR_RNDN); }
    Real(const Real& other, mpfr_prec_t bits) { init(bits); mpfr_set(v_, other.v_, MPFR_RNDN); }

    /// Parses a decimal string; throws std::invalid_argument on malformed input.
    static Real parse(std::string_view text, mpfr_prec_t bits);

    Real(const Real& other) { init(other.precision()); mpfr_set(v_, other.v_, MPFR_RNDN); }
    Real(Real&& other) noexcept { *v_ = *other.v_; other.v_->_mpfr_d = nullptr; }
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real() { if (v_->_mpfr_d != nullptr) mpfr_clear(v_); }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    explicit operator double() const { return to_double(); }

    /// Scientific notation with `digits` significant decimal digits.
    std::string to_string(int digits) const;
    /// Scientific notation with as many digits as the precision supports.
    std::string to_string() const;

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);

    Real operator-() const;

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

private:
    void init(mpfr_prec_t bits) { mpfr_init2(v_, bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits); }

    mpfr_t v_;
};

std::ostream& operator<<(std::ostream& os, const Real& x);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real cos(const Real& x);
Real lgamma(const Real& x);
Real pow(const Real& x, long k);
Real pow(const Real& x, const Real& y);
bool isfinite(const Real& x);
bool isnan(const Real& x);
bool isinf(const Real& x);

/// `v` rounded to the precision of `ref`. The double overload is the
/// identity so that templated code can write constants once.
inline double like(double /*ref*/, double v) { return v; }
inline Real like(const Real& ref, double v) { return Real(v, ref.precision()); }

inline double to_double(double x) { return x; }
inline double to_double(const Real& x) { return x.to_double(); }

}  // namespace fekete

namespace Eigen {

template <>
struct NumTraits<fekete::Real> : GenericNumTraits<fekete::Real> {
    using Real = fekete::Real;
    using NonInteger = fekete::Real;
    using Nested = fekete::Real;
    using Literal = fekete::Real;

    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 10,
        MulCost = 40
    };

    // Precision is a per-value property, so these are only nominal. None of
    // the decompositions used here consult them.
    static inline Real epsilon() { return Real(0x1p-52); }
    static inline Real dummy_precision() { return Real(1e-30); }
    static inline Real highest() { return Real(1e300); }
    static inline Real lowest() { return Real(-1e300); }
    static inline int digits10() { return 15; }
    static inline int digits() { return 53; }
};

}  // namespace Eigen
