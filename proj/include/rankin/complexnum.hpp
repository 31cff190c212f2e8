#pragma once

// Complex numbers over rankin::Real.

#include "rankin/real.hpp"

namespace rankin {

class Complex {
public:
    Real re, im;

    Complex() = default;
    explicit Complex(Prec prec) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(Real r) : re(std::move(r)), im(Real(re.prec())) {}

    static Complex of(double r, double i, Prec prec) { return {Real::of(r, prec), Real::of(i, prec)}; }
    static Complex i_unit(Prec prec) { return {Real(prec), Real::of(1L, prec)}; }

    Prec prec() const { return std::max(re.prec(), im.prec()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_finite() const { return !(re.is_nan() || im.is_nan() || re.is_inf() || im.is_inf()); }

    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
    friend Complex operator*(const Real& b, const Complex& a) { return a * b; }
    friend Complex operator*(const Complex& a, long b) { return {a.re * b, a.im * b}; }
    friend Complex operator*(long b, const Complex& a) { return a * b; }
    friend Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
    friend Complex operator/(const Complex& a, long b) { return {a.re / b, a.im / b}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend Complex operator+(const Complex& a, const Real& b) { return {a.re + b, a.im}; }
    friend Complex operator+(const Real& b, const Complex& a) { return a + b; }
    friend Complex operator-(const Complex& a, const Real& b) { return {a.re - b, a.im}; }
    friend Complex operator-(const Real& b, const Complex& a) { return {b - a.re, -a.im}; }
    friend Complex operator+(const Complex& a, long b) { return {a.re + b, a.im}; }
    friend Complex operator-(const Complex& a, long b) { return {a.re - b, a.im}; }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }

    friend Complex conj(const Complex& a) { return {a.re, -a.im}; }
    friend Real norm2(const Complex& a) { return a.re * a.re + a.im * a.im; }
    friend Real abs(const Complex& a) {
        Real r(a.prec());
        mpfr_hypot(r.raw(), a.re.raw(), a.im.raw(), MPFR_RNDN);
        return r;
    }
    friend Real arg(const Complex& a) { return atan2(a.im, a.re); }
    friend Complex inv(const Complex& a) {
        Real d = norm2(a);
        return {a.re / d, -a.im / d};
    }

    friend Complex exp(const Complex& a) {
        Real e = exp(a.re), s(a.prec()), c(a.prec());
        sin_cos(s, c, a.im);
        return {e * c, e * s};
    }
    // Principal branch.
    friend Complex log(const Complex& a) { return {log(abs(a)) * 1L, arg(a)}; }
    friend Complex sqrt(const Complex& a) {
        // principal sqrt via polar form
        Real r = abs(a);
        if (r.is_zero()) return Complex(a.prec());
        Real m = sqrt(r);
        Real t = arg(a) / 2;
        Real s(a.prec()), c(a.prec());
        sin_cos(s, c, t);
        return {m * c, m * s};
    }
    friend Complex pow(const Complex& a, const Complex& b) {
        if (a.is_zero()) return Complex(std::max(a.prec(), b.prec()));
        return exp(b * log(a));
    }
    friend Complex pow(const Complex& a, const Real& b) { return pow(a, Complex(b)); }
    friend Complex pow(const Complex& a, long e) {
        Prec p = a.prec();
        Complex r = Complex::of(1, 0, p);
        Complex base = a;
        long n = e < 0 ? -e : e;
        while (n > 0) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        if (e < 0) r = inv(r);
        return r;
    }
    friend Complex sin(const Complex& a) {
        Real s(a.prec()), c(a.prec());
        sin_cos(s, c, a.re);
        return {s * cosh(a.im), c * sinh(a.im)};
    }

    std::string str(size_t digits = 0) const {
        return re.str(digits) + (im.sign() < 0 ? " - " : " + ") + abs(im).str(digits) + "i";
    }
};

// i^e for integer e
inline Complex i_pow(long e, Prec prec) {
    long m = ((e % 4) + 4) % 4;
    switch (m) {
        case 0: return Complex::of(1, 0, prec);
        case 1: return Complex::of(0, 1, prec);
        case 2: return Complex::of(-1, 0, prec);
        default: return Complex::of(0, -1, prec);
    }
}

// e(t) = exp(2*pi*i*t) for rational t
inline Complex unit_root(const mpq_class& turn, Prec prec) {
    mpq_class t = turn;
    // reduce mod 1 keeps the sin/cos argument small
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    t -= mpq_class(fl);
    Real angle = Real::pi(prec + 8) * 2 * Real::of(t, prec + 8);
    Real s(prec), c(prec);
    sin_cos(s, c, angle);
    return {c, s};
}

} // namespace rankin
