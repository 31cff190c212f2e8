#pragma once

// Arbitrary-precision real numbers on top of MPFR, with value semantics.
// Precision is a property of each value; binary operations compute at the
// larger of the two operand precisions, rounding to nearest.

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <stdexcept>

namespace rankin {

using Prec = mpfr_prec_t;

class Real {
public:
    Real() { mpfr_init2(v_, 64); mpfr_set_nan(v_); }
    explicit Real(Prec prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    static Real of(double x, Prec prec) { Real r(prec); mpfr_set_d(r.v_, x, MPFR_RNDN); return r; }
    static Real of(long x, Prec prec) { Real r(prec); mpfr_set_si(r.v_, x, MPFR_RNDN); return r; }
    static Real of(const mpz_class& z, Prec prec) { Real r(prec); mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN); return r; }
    static Real of(const mpq_class& q, Prec prec) {
        mpq_class c = q;
        c.canonicalize();
        Real r(prec);
        mpfr_set_q(r.v_, c.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static Real from_str(const std::string& s, Prec prec) {
        Real r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("Real::from_str: bad literal '" + s + "'");
        return r;
    }
    static Real pi(Prec prec) { Real r(prec); mpfr_const_pi(r.v_, MPFR_RNDN); return r; }
    static Real log2c(Prec prec) { Real r(prec); mpfr_const_log2(r.v_, MPFR_RNDN); return r; }
    static Real euler(Prec prec) { Real r(prec); mpfr_const_euler(r.v_, MPFR_RNDN); return r; }
    static Real nan(Prec prec) { Real r(prec); mpfr_set_nan(r.v_); return r; }
    static Real pow2(long e, Prec prec) { Real r(prec); mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN); return r; }

    Prec prec() const { return mpfr_get_prec(v_); }
    Real at_prec(Prec p) const { Real r(p); mpfr_set(r.v_, v_, MPFR_RNDN); return r; }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_nan() const { return mpfr_nan_p(v_); }
    bool is_inf() const { return mpfr_inf_p(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    long exponent() const { return mpfr_zero_p(v_) ? LONG_MIN : mpfr_get_exp(v_); }

    std::string str(size_t digits = 0) const;

    friend Real operator-(const Real& a) { Real r(a.prec()); mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r; }

#define RANKIN_REAL_BINOP(OP, FN)                                              \
    friend Real operator OP(const Real& a, const Real& b) {                     \
        Real r(std::max(a.prec(), b.prec()));                                   \
        FN(r.v_, a.v_, b.v_, MPFR_RNDN);                                        \
        return r;                                                               \
    }                                                                           \
    friend Real operator OP(const Real& a, long b) {                            \
        Real r(a.prec()); FN##_si(r.v_, a.v_, b, MPFR_RNDN); return r;          \
    }
    RANKIN_REAL_BINOP(+, mpfr_add)
    RANKIN_REAL_BINOP(-, mpfr_sub)
    RANKIN_REAL_BINOP(*, mpfr_mul)
    RANKIN_REAL_BINOP(/, mpfr_div)
#undef RANKIN_REAL_BINOP
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator-(long a, const Real& b) { Real r(b.prec()); mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN); return r; }
    friend Real operator/(long a, const Real& b) { Real r(b.prec()); mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN); return r; }

    Real& operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
    Real& operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
    Real& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
    Real& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }
    Real& operator+=(const Real& o) { mpfr_prec_round(v_, std::max(prec(), o.prec()), MPFR_RNDN); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_prec_round(v_, std::max(prec(), o.prec()), MPFR_RNDN); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_prec_round(v_, std::max(prec(), o.prec()), MPFR_RNDN); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_prec_round(v_, std::max(prec(), o.prec()), MPFR_RNDN); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }
    friend bool operator!=(const Real& a, const Real& b) { return !mpfr_equal_p(a.v_, b.v_); }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }

#define RANKIN_REAL_FN1(NAME, FN)                                               \
    friend Real NAME(const Real& a) { Real r(a.prec()); FN(r.v_, a.v_, MPFR_RNDN); return r; }
    RANKIN_REAL_FN1(sqrt, mpfr_sqrt)
    RANKIN_REAL_FN1(exp, mpfr_exp)
    RANKIN_REAL_FN1(log, mpfr_log)
    RANKIN_REAL_FN1(sin, mpfr_sin)
    RANKIN_REAL_FN1(cos, mpfr_cos)
    RANKIN_REAL_FN1(tan, mpfr_tan)
    RANKIN_REAL_FN1(atan, mpfr_atan)
    RANKIN_REAL_FN1(sinh, mpfr_sinh)
    RANKIN_REAL_FN1(cosh, mpfr_cosh)
    RANKIN_REAL_FN1(abs, mpfr_abs)
    RANKIN_REAL_FN1(gamma, mpfr_gamma)
    RANKIN_REAL_FN1(lngamma, mpfr_lngamma)
    RANKIN_REAL_FN1(digamma, mpfr_digamma)
    RANKIN_REAL_FN1(zeta_mpfr, mpfr_zeta)
    RANKIN_REAL_FN1(floor_r, mpfr_rint_floor)
    RANKIN_REAL_FN1(ceil_r, mpfr_rint_ceil)
#undef RANKIN_REAL_FN1

    friend Real atan2(const Real& y, const Real& x) {
        Real r(std::max(y.prec(), x.prec()));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& a, long b) { Real r(a.prec()); mpfr_pow_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real mul2exp(const Real& a, long e) { Real r(a.prec()); mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN); return r; }
    friend Real fma(const Real& a, const Real& b, const Real& c) {
        Real r(std::max(std::max(a.prec(), b.prec()), c.prec()));
        mpfr_fma(r.v_, a.v_, b.v_, c.v_, MPFR_RNDN);
        return r;
    }
    friend void sin_cos(Real& s, Real& c, const Real& x) {
        mpfr_set_prec(s.v_, x.prec());
        mpfr_set_prec(c.v_, x.prec());
        mpfr_sin_cos(s.v_, c.v_, x.v_, MPFR_RNDN);
    }
    friend Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
    friend Real min(const Real& a, const Real& b) { return a <= b ? a : b; }

private:
    mpfr_t v_;
};

inline std::string Real::str(size_t digits) const {
    if (is_nan()) return "nan";
    if (is_inf()) return sign() > 0 ? "inf" : "-inf";
    if (digits == 0) digits = (size_t)(prec() * 0.30103) + 2;
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    bool neg = !mant.empty() && mant[0] == '-';
    std::string dig = neg ? mant.substr(1) : mant;
    std::string out = (neg ? "-" : "") + ("0." + dig) + "e" + std::to_string((long)e);
    return out;
}

// A real value n/d exactly representable for staging into Real.
inline Real real_of_q(long num, long den, Prec prec) {
    Real r = Real::of(num, prec);
    return r / den;
}

} // namespace rankin
