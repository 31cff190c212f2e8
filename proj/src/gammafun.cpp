#include "rankin/gammafun.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace rankin {

static mpz_class factorial_helper(long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), (unsigned long)n);
    return r;
}

// ---------------------------------------------------------------------------
// Spouge's approximation.  With parameter a, for Re(z) > 0:
//   Gamma(z) = (z+a-1)^{z-1/2} e^{-(z+a-1)} (c_0 + sum_{k=1}^{a-1} c_k/(z+k-1) + eps)
// with relative error |eps| < a^{-1/2} (2pi)^{-(a+1/2)}.

namespace {

struct SpougeTable {
    long a;
    std::vector<Real> c;  // c_0 .. c_{a-1}
};

const SpougeTable& spouge_table(Prec prec) {
    static std::map<Prec, SpougeTable> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(prec);
    if (it != cache.end()) return it->second;

    // (a + 1/2) log2(2pi) > prec + 12
    long a = (long)((prec + 16) / 2.65) + 4;
    Prec wp = prec + 32 + (Prec)a;  // coefficient cancellation ~ a bits
    SpougeTable t;
    t.a = a;
    Real two_pi = Real::pi(wp) * 2;
    t.c.reserve(a);
    t.c.push_back(sqrt(two_pi));
    for (long k = 1; k < a; ++k) {
        // c_k = (-1)^{k-1} / (k-1)! * (a-k)^{k-1/2} e^{a-k}
        Real ak = Real::of(a - k, wp);
        Real v = pow(ak, Real::of(2 * k - 1, wp) / 2) * exp(ak);
        v = v / Real::of(factorial_helper(k - 1), wp);
        if ((k - 1) % 2 == 1) v = -v;
        t.c.push_back(v);
    }
    auto pos = cache.emplace(prec, std::move(t)).first;
    return pos->second;
}

} // namespace

Complex cgamma(const Complex& s, Prec prec) {
    if (s.im.is_zero()) {
        Real fl = floor_r(s.re);
        if (s.re <= 0 && fl == s.re) throw std::domain_error("cgamma: pole at non-positive integer");
        return Complex(gamma(s.re.at_prec(prec + 16)).at_prec(prec));
    }
    Prec wp = prec + 48;
    Complex z = Complex(s.re.at_prec(wp), s.im.at_prec(wp));
    if (z.re < Real::of(0.5, wp)) {
        // Gamma(z) = pi / (sin(pi z) Gamma(1-z))
        Complex one(Real::of(1L, wp));
        Complex g1 = cgamma(one - z, wp);
        Complex sp = sin(Complex(Real::pi(wp)) * z);
        Complex r = Complex(Real::pi(wp)) / (sp * g1);
        return Complex(r.re.at_prec(prec), r.im.at_prec(prec));
    }
    const SpougeTable& t = spouge_table(wp);
    Complex acc(wp);
    acc += Complex(t.c[0].at_prec(wp));
    for (long k = 1; k < t.a; ++k) acc += Complex(t.c[k].at_prec(wp)) / (z + (k - 1));
    Complex za = z + (t.a - 1);
    Complex r = pow(za, z - Complex(Real::of(0.5, wp))) * exp(-za) * acc;
    return Complex(r.re.at_prec(prec), r.im.at_prec(prec));
}

Complex clngamma(const Complex& s, Prec prec) {
    return log(cgamma(s, prec + 16));
}

// ---------------------------------------------------------------------------
// upper incomplete gamma

static Real lower_gamma_series(const Real& a, const Real& x, Prec wp) {
    // gamma(a,x) = x^a e^{-x} sum_{n>=0} x^n / (a (a+1) ... (a+n)),   a > 0
    Real term = Real::of(1L, wp) / a;
    Real sum = term;
    Real eps = Real::pow2(-(long)wp - 8, wp);
    for (long n = 1; n < 100000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (abs(term) < eps * abs(sum)) break;
    }
    return pow(x, a) * exp(-x) * sum;
}

static Real upper_gamma_cf(const Real& a, const Real& x, Prec wp) {
    // Gamma(a,x) = e^{-x} x^a / (x+1-a - 1(1-a)/(x+3-a - 2(2-a)/(x+5-a - ...)))
    // modified Lentz
    Real tiny = Real::pow2(-(long)wp * 4, wp);
    Real b = x + 1 - a;
    Real c = 1 / tiny;
    Real d = 1 / b;
    Real h = d;
    Real eps = Real::pow2(-(long)wp - 8, wp);
    for (long i = 1; i < 200000; ++i) {
        Real an = -Real::of(i, wp) * (Real::of(i, wp) - a);
        b += 2;
        d = an * d + b;
        if (abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (abs(c) < tiny) c = tiny;
        d = 1 / d;
        Real del = d * c;
        h *= del;
        if (abs(del - 1) < eps) break;
    }
    return exp(-x) * pow(x, a) * h;
}

Real expint_e1(const Real& x, Prec prec) {
    if (x.sign() <= 0) throw std::domain_error("expint_e1: x must be > 0");
    Prec wp = prec + 32;
    double xd = x.to_double();
    if (xd > 1.0 + 0.05 * (double)prec) {
        return upper_gamma_cf(Real(wp), x.at_prec(wp), wp).at_prec(prec);
    }
    // E1(x) = -gamma - ln x - sum_{n>=1} (-x)^n/(n n!);  cancellation ~ x log2(e)
    wp += (Prec)(1.5 * xd) + 16;
    Real xs = x.at_prec(wp);
    Real sum(wp);
    Real term = Real::of(1L, wp);
    Real eps = Real::pow2(-(long)wp - 8, wp);
    for (long n = 1; n < 100000; ++n) {
        term *= -xs / n;
        Real add = term / n;
        sum += add;
        if (abs(add) < eps * (abs(sum) + Real::of(1L, wp))) break;
    }
    Real r = -Real::euler(wp) - log(xs) - sum;
    return r.at_prec(prec);
}

Real upper_gamma(long a, const Real& x, Prec prec) {
    if (x.sign() <= 0) throw std::domain_error("upper_gamma: x must be > 0");
    Prec wp = prec + 48;
    Real xs = x.at_prec(wp);
    if (a <= 0) {
        // downward from Gamma(0,x) = E1(x):
        // Gamma(k-1,x) = (Gamma(k,x) - x^{k-1} e^{-x}) / (k-1)
        Real g = expint_e1(xs, wp);
        Real ex = exp(-xs);
        Real xp = 1 / xs;  // x^{k-1} at k = 0
        for (long k = 0; k > a; --k) {
            g = (g - xp * ex) / (k - 1);
            xp /= xs;
        }
        return g.at_prec(prec);
    }
    // upward from Gamma(1,x) = e^{-x}: Gamma(k+1,x) = k Gamma(k,x) + x^k e^{-x}
    Real ex = exp(-xs);
    Real g = ex;
    Real xp = Real::of(1L, wp);
    for (long k = 1; k < a; ++k) {
        xp *= xs;
        g = Real::of(k, wp) * g + xp * ex;
    }
    return g.at_prec(prec);
}

Real upper_gamma(const Real& a, const Real& x, Prec prec) {
    if (x.sign() <= 0) throw std::domain_error("upper_gamma: x must be > 0");
    Real fl = floor_r(a);
    if (fl == a) {
        double ad = a.to_double();
        if (std::abs(ad) < 1e6) return upper_gamma(a.to_long(), x, prec);
    }
    Prec wp = prec + 48;
    Real as = a.at_prec(wp), xs = x.at_prec(wp);
    if (a.sign() < 0) {
        // climb to a+m > 1, then descend with Gamma(a,x) = (Gamma(a+1,x) - x^a e^{-x})/a
        long m = (long)(-a.to_double()) + 2;
        Real g = upper_gamma(as + m, xs, wp);
        for (long k = m; k >= 1; --k) {
            Real ak = as + (k - 1);
            g = (g - pow(xs, ak) * exp(-xs)) / ak;
        }
        return g.at_prec(prec);
    }
    if (xs > as + 1) return upper_gamma_cf(as, xs, wp).at_prec(prec);
    Real g = gamma(as) - lower_gamma_series(as, xs, wp);
    return g.at_prec(prec);
}

Real upper_gamma_dloga(long a, const Real& x, Prec prec) {
    if (a < 1) throw std::domain_error("upper_gamma_dloga: requires integer a >= 1");
    Prec wp = prec + 48;
    Real xs = x.at_prec(wp);
    Real lx = log(xs);
    Real ex = exp(-xs);
    // T(1,x) = e^{-x} ln x + E1(x);  T(k+1,x) = k T(k,x) + Gamma(k,x) + x^k e^{-x} ln x
    Real t = ex * lx + expint_e1(xs, wp);
    Real g = ex;                   // Gamma(1,x)
    Real xp = Real::of(1L, wp);    // x^0
    for (long k = 1; k < a; ++k) {
        xp *= xs;
        Real xk_ex = xp * ex;
        t = Real::of(k, wp) * t + g + xk_ex * lx;
        g = Real::of(k, wp) * g + xk_ex;
    }
    return t.at_prec(prec);
}

} // namespace rankin
