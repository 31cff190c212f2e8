#include "rankin/theta_engine.hpp"
#include "rankin/gammafun.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace rankin {

namespace {

mpq_class frac01(mpq_class q) {
    q.canonicalize();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    q -= mpq_class(fl);
    return q;
}

const Real& exp_m2pi(Prec wp) {
    static std::map<Prec, Real> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(wp);
    if (it == cache.end()) it = cache.emplace(wp, exp(Real::pi(wp) * (-2))).first;
    return it->second;
}

// x^e for integer e by binary powering (e may be negative)
Real ipow(const Real& x, long e) {
    if (e == 0) return Real::of(1L, x.prec());
    long n = e < 0 ? -e : e;
    Real base = x, r = Real::of(1L, x.prec());
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    if (e < 0) return 1 / r;
    return r;
}

// Incomplete-gamma column evaluator for a fixed parameter a.  Fast paths for
// integer a given e^{-x} precomputed; generic fallback otherwise.
struct GKernel {
    Prec wp;
    bool integral = false;
    long ai = 0;
    Real a;
    Real lead;                   // (ai-1)! for the polynomial path
    std::vector<Real> inv_fact;  // 1/k!

    GKernel(const Real& a_, Prec wp_) : wp(wp_), a(a_), lead(wp_) {
        Real fl = floor_r(a_);
        if (fl == a_ && std::abs(a_.to_double()) < 1e6) {
            integral = true;
            ai = a_.to_long();
            if (ai >= 1) {
                inv_fact.reserve(ai);
                mpz_class f = 1;
                for (long k = 0; k < ai; ++k) {
                    if (k > 0) f *= k;
                    inv_fact.push_back(1 / Real::of(f, wp));
                }
                mpz_class lf = 1;
                for (long k = 2; k < ai; ++k) lf *= k;
                lead = Real::of(lf, wp);
            }
        }
    }

    // Gamma(a, x) * x^{-s_out} given x and e^{-x}; s_out is the power the
    // caller wants folded in (kept separate for clarity: we return Gamma only)
    Real gamma_at(const Real& x, const Real& emx) const {
        if (integral) {
            if (ai >= 1) {
                // Gamma(n,x) = (n-1)! e^{-x} sum_{k<n} x^k/k!
                Real s = Real::of(1L, wp);
                if (ai >= 2) {
                    // Horner on sum_k x^k/k!
                    s = inv_fact[ai - 1];
                    for (long k = ai - 2; k >= 0; --k) s = s * x + inv_fact[k];
                }
                return lead * emx * s;
            }
            // a <= 0: descend from Gamma(0,x) = E1(x)
            Real g = e1_fast(x, emx);
            if (ai == 0) return g;
            Real xp = 1 / x;
            for (long k = 0; k > ai; --k) {
                g = (g - xp * emx) / (k - 1);
                xp /= x;
            }
            return g;
        }
        return upper_gamma(a, x, wp);
    }

    // E1 with e^{-x} known: continued fraction for x >= 1.5, series otherwise.
    // Since Gamma(0,x) ~ e^{-x}/x, a term at large x only needs enough bits
    // for the post-e^{-x} budget; run the CF at that reduced precision.
    Real e1_fast(const Real& x, const Real& emx) const {
        double xd = x.to_double();
        Prec wpe = (Prec)std::max<long>(64, (long)wp - (long)(1.4426950408889634 * xd) + 24);
        if (wpe > wp) wpe = wp;
        if (xd >= 1.5) {
            // Gamma(0,x) = e^{-x} / (x+1- 1/(x+3- 4/(x+5- 9/(x+7-...))))
            Real xe = x.at_prec(wpe);
            Real tiny = Real::pow2(-(long)wpe * 2, wpe);
            Real b = xe + 1;
            Real c = 1 / tiny;
            Real d = 1 / b;
            Real h = d;
            Real eps = Real::pow2(-(long)wpe - 4, wpe);
            for (long i = 1; i < 100000; ++i) {
                Real an = Real::of(-i * i, wpe);
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
            return emx * h;
        }
        return expint_e1(x, wp);
    }
};

} // namespace

ThetaEngineResult completed_lattice_sum(const Complex& tau, long w, mpq_class v1, mpq_class v2,
                                        mpq_class u1, mpq_class u2, const Real& sigma, Prec prec) {
    Prec wp = prec + 24;
    Real y0 = tau.im.at_prec(wp);
    Real x0 = tau.re.at_prec(wp);
    if (y0.sign() <= 0) throw std::domain_error("theta engine: Im(tau) must be > 0");
    long wt = std::labs(w);

    u1 = frac01(u1);
    u2 = frac01(u2);
    mpq_class v1f = frac01(v1), v2f = frac01(v2);
    mpq_class n01 = v1 - v1f, n02 = v2 - v2f;
    Complex phase0 = unit_root(-(u1 * n01 + u2 * n02), wp);
    bool v_integral = (v1f == 0 && v2f == 0);
    bool u_integral = (u1 == 0 && u2 == 0);

    Real s = sigma.at_prec(wp);
    Real fl = floor_r(s);
    bool s_int = (fl == s) && std::abs(s.to_double()) < 1e6;
    long si = s_int ? s.to_long() : 0;
    Real sig_dual = Real::of(wt + 1, wp) - s;

    double t_abs = (double)prec + 16;
    double T = t_abs * 0.6931471805599453 + 8;
    for (int i = 0; i < 4; ++i)
        T = t_abs * 0.6931471805599453 + (wt / 2.0 + 1.5) * std::log(1.0 + T) +
            std::log(64.0 / std::min(1.0, y0.to_double())) + 4;

    Real pi = Real::pi(wp);
    GKernel g_up(s, wp);
    GKernel g_dn(sig_dual, wp);
    const Real& S2pi = exp_m2pi(wp);  // e^{-2 pi} -- wait: need e^{-2 pi} only if pi-free; see below

    Complex U(wp), D(wp);

    // shared row walker: terms over n in [nlo, nhi] at complex points
    // z_n = z0 + n (steps of +1 in the real part), with
    //   x_n = pi |z_n|^2,  e^{-x_{n+1}} = e^{-x_n} * ratio_n,
    //   ratio_{n+1} = ratio_n * e^{-2 pi}.
    // `kern` receives (z, x, emx) and returns Gamma(a, x)-weighted factor;
    // `spow` is the integer power for x^{spow} folded by the caller.
    auto walk_row = [&](Complex z0, long nlo, long nhi, const GKernel& ker, const Real& sexp,
                        bool sexp_int, long sexp_i, const Complex& rowphase0,
                        const Complex& colstep, bool has_phase, Complex& acc) {
        Real re = z0.re + nlo;
        Real im = z0.im;
        Real im2 = im * im;
        Real x = pi * (re * re + im2);
        Real emx = exp(-x);
        // ratio for the first step: e^{-pi (2 re + 1)}
        Real ratio = exp(-pi * (2 * re + 1));
        Real step2 = S2pi;
        Complex ph = rowphase0;
        Complex z(re, im);
        for (long n = nlo; n <= nhi; ++n) {
            if (x.to_double() <= T && !x.is_zero()) {
                // weight H_w(z)
                Complex term;
                if (w == 0) {
                    term = Complex(Real::of(1L, wp));
                } else if (w > 0) {
                    Complex c = conj(z);
                    Complex p2 = c;
                    term = Complex(Real::of(1L, wp));
                    long e = w;
                    while (e > 0) {
                        if (e & 1) term = term * p2;
                        p2 = p2 * p2;
                        e >>= 1;
                    }
                } else {
                    Complex p2 = z;
                    term = Complex(Real::of(1L, wp));
                    long e = -w;
                    while (e > 0) {
                        if (e & 1) term = term * p2;
                        p2 = p2 * p2;
                        e >>= 1;
                    }
                }
                Real xs = sexp_int ? ipow(x, -sexp_i) : pow(x, -sexp);
                Real gg = ker.gamma_at(x, emx);
                Real wgt = xs * gg;
                if (has_phase) term = term * ph;
                acc += term * wgt;
            }
            // advance
            x += pi * (2 * z.re + 1);
            emx *= ratio;
            ratio *= step2;
            z.re += 1;
            if (has_phase && n < nhi) ph = ph * colstep;
        }
    };

    // ---- upper theta: z = (m+v1) tau + (n+v2), phase e(u1 m + u2 n)
    {
        double v1d = v1f.get_d(), v2d = v2f.get_d();
        double y0d = y0.to_double(), x0d = x0.to_double();
        double rowmax = std::sqrt(T / M_PI) / y0d;
        long mlo = (long)std::floor(-rowmax - v1d) - 1, mhi = (long)std::ceil(rowmax - v1d) + 1;
        Real v1r = Real::of(v1f, wp), v2r = Real::of(v2f, wp);
        bool has_phase = !u_integral;
        Complex colstep = has_phase ? unit_root(u2, wp) : Complex::of(1, 0, wp);
        for (long m = mlo; m <= mhi; ++m) {
            double A = m + v1d;
            double rad2 = T / M_PI - A * A * y0d * y0d;
            if (rad2 < 0) continue;
            double rad = std::sqrt(rad2);
            double center = -(A * x0d + v2d);
            long nlo = (long)std::floor(center - rad) - 1, nhi = (long)std::ceil(center + rad) + 1;
            // skip the excluded lattice point by splitting the row
            Real Am = v1r + m;
            Complex z0(Am * x0 + v2r, Am * y0);
            Complex ph0 = has_phase ? unit_root(u1 * m + u2 * nlo, wp) : Complex::of(1, 0, wp);
            if (v_integral && m == 0 && nlo <= 0 && 0 <= nhi) {
                // left part [nlo, -1]
                if (nlo <= -1) walk_row(z0, nlo, -1, g_up, s, s_int, si, ph0, colstep, has_phase, U);
                if (1 <= nhi) {
                    Complex ph1 = has_phase ? unit_root(u1 * m + u2 * 1, wp) : Complex::of(1, 0, wp);
                    walk_row(z0, 1, nhi, g_up, s, s_int, si, ph1, colstep, has_phase, U);
                }
            } else {
                walk_row(z0, nlo, nhi, g_up, s, s_int, si, ph0, colstep, has_phase, U);
            }
        }
    }

    // ---- dual theta: zstar = ((mu1-u1) - (mu2-u2) tau)/y0, phase e(v1 mu1 + v2 mu2)
    {
        double u1d = u1.get_d(), u2d = u2.get_d();
        double y0d = y0.to_double(), x0d = x0.to_double();
        double rowmax = std::sqrt(T / M_PI);
        long m2lo = (long)std::floor(-rowmax + u2d) - 1, m2hi = (long)std::ceil(rowmax + u2d) + 1;
        Real u1r = Real::of(u1, wp), u2r = Real::of(u2, wp);
        long sw = (w >= 0 && (w % 2 == 1)) ? -1 : 1;
        Complex pref = unit_root(-(u1 * v1f + u2 * v2f), wp) / y0;
        if (sw < 0) pref = -pref;
        bool has_phase = !v_integral;
        Complex colstep = has_phase ? unit_root(v1f, wp) : Complex::of(1, 0, wp);
        Real dual_sexp = Real::of(wt + 1, wp) - s;  // x^{ s - wt - 1 } = x^{-dual_sexp}
        bool dint = s_int;
        long dsi = s_int ? (wt + 1 - si) : 0;
        for (long mu2 = m2lo; mu2 <= m2hi; ++mu2) {
            double xi2d = mu2 - u2d;
            double rad2 = (T / M_PI - xi2d * xi2d) * y0d * y0d;
            if (rad2 < 0) continue;
            double rad = std::sqrt(rad2);
            double center = xi2d * x0d + u1d;
            long m1lo = (long)std::floor(center - rad) - 1, m1hi = (long)std::ceil(center + rad) + 1;
            Real xi2 = Real::of(mu2, wp) - u2r;
            // z* as a function of mu1: ((mu1 - u1) - xi2 x0)/y0 - i xi2; steps of 1/y0
            Complex z0((Real::of(m1lo, wp) - u1r - xi2 * x0) / y0, -xi2);
            // walk with step 1/y0: reuse walk_row by rescaling: z*(mu1) = (mu1 + c)/y0 - i xi2.
            // x = pi |z*|^2 does not advance by the unit-step recurrence, so walk manually.
            Complex ph = has_phase ? unit_root(v2f * mu2 + v1f * m1lo, wp) : Complex::of(1, 0, wp);
            Real invy = 1 / y0;
            Real re = z0.re;
            Real im2 = xi2 * xi2;
            Real x = pi * (re * re + im2);
            // e^{-x} recurrence with step h = 1/y0: x_{k+1} - x_k = pi (2 re_k h + h^2)
            Real emx = exp(-x);
            Real h = invy;
            Real hh = h * h;
            Real ratio = exp(-pi * (2 * re * h + hh));
            Real step2 = exp(-pi * 2 * hh);
            for (long mu1 = m1lo; mu1 <= m1hi; ++mu1) {
                if (u_integral && mu1 == 0 && mu2 == 0) {
                    // excluded (or weight-zero) dual origin; still advance
                } else if (x.to_double() <= T && !x.is_zero()) {
                    Complex zs(re, -xi2);
                    Complex term;
                    if (w == 0) {
                        term = Complex(Real::of(1L, wp));
                    } else {
                        Complex base = (w > 0) ? conj(zs) : zs;
                        term = Complex(Real::of(1L, wp));
                        long e = wt;
                        Complex p2 = base;
                        while (e > 0) {
                            if (e & 1) term = term * p2;
                            p2 = p2 * p2;
                            e >>= 1;
                        }
                    }
                    Real xs = dint ? ipow(x, -dsi) : pow(x, s - (wt + 1));
                    Real gg = g_dn.gamma_at(x, emx);
                    if (has_phase) term = term * ph;
                    D += term * (xs * gg);
                }
                x += pi * (2 * re * h + hh);
                emx *= ratio;
                ratio *= step2;
                re += h;
                if (has_phase && mu1 < m1hi) ph = ph * colstep;
            }
        }
        D = D * pref;
    }

    ThetaEngineResult res;
    Complex G = U + D;

    bool sigma_is_0 = s.is_zero();
    bool sigma_is_w1 = (s == Real::of(wt + 1, wp));
    long sw = (w >= 0 && (w % 2 == 1)) ? -1 : 1;
    if (w == 0 && v_integral) {
        if (sigma_is_0) {
            res.pole_at_0 = true;
            res.residue0 = phase0 * Real::of(-1L, wp);
        } else {
            G -= Complex(1 / s);
        }
    }
    if (w == 0 && u_integral) {
        Complex coef = Complex(Real::of(sw, wp) / y0);
        if (sigma_is_w1) {
            res.pole_at_w1 = true;
            res.residue1 = phase0 * coef;
        } else {
            G += coef / (s - Real::of(wt + 1, wp));
        }
    }

    res.value = phase0 * G;
    res.value = Complex(res.value.re.at_prec(prec), res.value.im.at_prec(prec));
    return res;
}

} // namespace rankin
