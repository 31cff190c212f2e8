#include "rankin/hurwitz.hpp"

namespace rankin {

// complex power (n+a)^{-s} with n+a real > 0
static Complex real_pow_cs(const Real& base, const Complex& s, Prec wp) {
    // base^{-s} = exp(-s ln base)
    Real lb = log(base);
    Complex e = Complex(-s.re * lb, -s.im * lb);
    return exp(e);
}

Complex hurwitz_zeta(const Complex& s, const mpq_class& a_in, Prec prec) {
    mpq_class a = a_in;
    a.canonicalize();
    if (a <= 0) throw std::domain_error("hurwitz_zeta: a must be > 0");
    if (s.im.is_zero() && s.re == Real::of(1L, s.re.prec()))
        throw PoleAtOne("hurwitz_zeta: s = 1");

    Prec wp = prec + 64;
    Complex sc(s.re.at_prec(wp), s.im.at_prec(wp));
    Real av = Real::of(a, wp);
    (void)0;
    double im_s = std::abs(s.im.to_double());
    double re_s = s.re.to_double();

    long M = std::max<long>(16, (long)(0.4 * wp));
    M = std::max(M, (long)(1.3 * im_s) + 8);
    // Euler-Maclaurin needs Re(s) + 2J + 1 > 1; if Re(s) very negative, push M up
    if (re_s < 0) M += (long)(-re_s);

    Real target = Real::pow2(-(long)prec - 24, wp);

    for (int attempt = 0; attempt < 6; ++attempt) {
        // partial sum
        Complex sum(wp);
        for (long n = 0; n < M; ++n) sum += real_pow_cs(av + n, sc, wp);
        Real Ma = av + M;
        // (M+a)^{1-s}/(s-1)
        Complex one(Real::of(1L, wp));
        Complex tail = real_pow_cs(Ma, sc - one, wp) / (sc - one);
        // + (M+a)^{-s}/2
        Complex ma_ms = real_pow_cs(Ma, sc, wp);
        tail += ma_ms / 2;
        // + sum_j B_{2j}/(2j)! (s)_{2j-1} (M+a)^{-s-2j+1}
        Complex poch(Real::of(1L, wp));  // (s)_0 = 1 -> build (s)_{2j-1} incrementally
        Complex mpow = ma_ms * Ma;       // (M+a)^{-s+1}
        bool converged = false;
        Real bound(wp);
        long J_MAX = 4 * (long)wp;
        Complex em(wp);
        for (long j = 1; j <= J_MAX; ++j) {
            // update pochhammer: (s)_{2j-1} = s(s+1)...(s+2j-2)
            if (j == 1) {
                poch = sc;
            } else {
                poch = poch * (sc + (2 * j - 3)) * (sc + (2 * j - 2));
            }
            mpow = mpow / (Ma * Ma);  // (M+a)^{-s-2j+1}
            mpq_class coef = bernoulli_number(2 * (unsigned)j) / mpq_class(factorial_z(2 * (unsigned)j));
            Complex term = poch * mpow * Real::of(coef, wp);
            em += term;
            // remainder bound: |B_{2j+2}/(2j+2)! (s)_{2j+1} (M+a)^{-s-2j-1}| * safety
            // use |next term| * |s+2j+1|/(Re s+2j+1) as the standard bound
            Real denom = sc.re + (2 * j + 1);
            if (denom.sign() <= 0) continue;
            Complex poch_next = poch * (sc + (2 * j - 1)) * (sc + (2 * j));
            mpq_class coef2 = bernoulli_number(2 * (unsigned)j + 2) / mpq_class(factorial_z(2 * (unsigned)j + 2));
            Real nb = abs(poch_next) * abs(mpow) / (abs(Ma) * abs(Ma)) * abs(Real::of(coef2, wp));
            nb = nb * abs(sc + (2 * j + 1)) / denom;
            if (nb < target) {
                converged = true;
                bound = nb;
                break;
            }
            if (j > 4 && nb > bound && !bound.is_zero()) break;  // diverging: restart with larger M
            bound = nb;
        }
        if (converged) {
            Complex r = sum + tail + em;
            return Complex(r.re.at_prec(prec), r.im.at_prec(prec));
        }
        M *= 2;
    }
    throw Error("hurwitz_zeta: Euler-Maclaurin failed to converge");
}

Complex dirichlet_L(const DirichletCharacter& chi, const Complex& s, Prec prec) {
    if (chi.is_principal() && s.im.is_zero() && s.re == Real::of(1L, s.re.prec()))
        throw PoleAtOne("dirichlet_L: principal character at s = 1");
    Prec wp = prec + 32;
    long N = chi.modulus();
    Complex sc(s.re.at_prec(wp), s.im.at_prec(wp));
    if (!chi.is_principal() && s.im.is_zero() && s.re == Real::of(1L, s.re.prec())) {
        // poles of the Hurwitz terms cancel (sum chi(u) = 0):
        // L(chi,1) = -(1/N) sum_u chi(u) psi(u/N)
        Complex acc(wp);
        for (long u = 1; u <= N; ++u) {
            RootOfUnity v = chi(u);
            if (v.zero) continue;
            acc += v.to_complex(wp) * digamma(Real::of(mpq_class(u, N), wp));
        }
        Complex r = -acc / N;
        return Complex(r.re.at_prec(prec), r.im.at_prec(prec));
    }
    Complex sum(wp);
    for (long u = 1; u <= N; ++u) {
        RootOfUnity v = chi(u);
        if (v.zero) continue;
        sum += v.to_complex(wp) * hurwitz_zeta(sc, mpq_class(u, N), wp);
    }
    // N^{-s}
    Complex scale = exp(Complex(-sc.re * log(Real::of(N, wp)), -sc.im * log(Real::of(N, wp))));
    Complex r = scale * sum;
    return Complex(r.re.at_prec(prec), r.im.at_prec(prec));
}

Complex dirichlet_L_series(const DirichletCharacter& chi, const Complex& s, long n_max, Prec prec) {
    Prec wp = prec + 16;
    Complex sc(s.re.at_prec(wp), s.im.at_prec(wp));
    Complex sum(wp);
    for (long n = 1; n <= n_max; ++n) {
        RootOfUnity v = chi(n);
        if (v.zero) continue;
        sum += v.to_complex(wp) * real_pow_cs(Real::of(n, wp), sc, wp);
    }
    return Complex(sum.re.at_prec(prec), sum.im.at_prec(prec));
}

} // namespace rankin
