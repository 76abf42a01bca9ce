#include "fekete/real.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace fekete {

namespace {

mpfr_prec_t max_prec(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

template <class Op>
Real binary(const Real& a, const Real& b, Op op) {
    Real r(0.0, max_prec(a, b));
    op(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

template <class Op>
Real unary(const Real& a, Op op) {
    Real r(0.0, a.precision());
    op(r.get(), a.get(), MPFR_RNDN);
    return r;
}

// Compound assignment keeps the larger precision of the two operands.
template <class Op>
Real& compound(Real& a, const Real& b, Op op) {
    if (b.precision() > a.precision()) {
        a = binary(a, b, op);
    } else {
        op(a.get(), a.get(), b.get(), MPFR_RNDN);
    }
    return a;
}

}  // namespace

Real Real::parse(std::string_view text, mpfr_prec_t bits) {
    std::string s(text);
    Real r(0.0, bits);
    char* end = nullptr;
    if (!s.empty()) mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (s.empty() || end == s.c_str() || *end != '\0') {
        throw std::invalid_argument("not a decimal number: '" + s + "'");
    }
    return r;
}

Real& Real::operator=(const Real& other) {
    if (this == &other) return *this;
    if (v_->_mpfr_d == nullptr) {
        init(other.precision());
    } else if (precision() != other.precision()) {
        mpfr_set_prec(v_, other.precision());
    }
    mpfr_set(v_, other.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    if (this == &other) return *this;
    if (v_->_mpfr_d != nullptr) mpfr_clear(v_);
    *v_ = *other.v_;
    other.v_->_mpfr_d = nullptr;
    return *this;
}

std::string Real::to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    digits = std::max(digits, 1);
    const int len = mpfr_snprintf(nullptr, 0, "%.*Re", digits - 1, v_);
    std::vector<char> buf(static_cast<std::size_t>(len) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
    return std::string(buf.data(), static_cast<std::size_t>(len));
}

std::string Real::to_string() const {
    // Decimal digits that round-trip at this binary precision.
    const auto digits = static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30102999566398120)) + 1;
    return to_string(digits);
}

Real& Real::operator+=(const Real& o) { return compound(*this, o, mpfr_add); }
Real& Real::operator-=(const Real& o) { return compound(*this, o, mpfr_sub); }
Real& Real::operator*=(const Real& o) { return compound(*this, o, mpfr_mul); }
Real& Real::operator/=(const Real& o) { return compound(*this, o, mpfr_div); }

Real Real::operator-() const { return unary(*this, mpfr_neg); }

Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }

std::ostream& operator<<(std::ostream& os, const Real& x) {
    const auto p = os.precision();
    return os << (p > 0 ? x.to_string(static_cast<int>(p)) : x.to_string());
}

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real log1p(const Real& x) { return unary(x, mpfr_log1p); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }

Real lgamma(const Real& x) {
    Real r(0.0, x.precision());
    int sign = 0;
    mpfr_lgamma(r.get(), &sign, x.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real& x, long k) {
    Real r(0.0, x.precision());
    mpfr_pow_si(r.get(), x.get(), k, MPFR_RNDN);
    return r;
}

Real pow(const Real& x, const Real& y) { return binary(x, y, mpfr_pow); }

bool isfinite(const Real& x) { return mpfr_number_p(x.get()) != 0; }
bool isnan(const Real& x) { return mpfr_nan_p(x.get()) != 0; }
bool isinf(const Real& x) { return mpfr_inf_p(x.get()) != 0; }

}  // namespace fekete
