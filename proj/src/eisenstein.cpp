#include "rankin/eisenstein.hpp"
#include "rankin/bernoulli.hpp"
#include "rankin/gammafun.hpp"

#include <cmath>

namespace rankin {

namespace {

// z^{-a} zbar^{-b} for a complex point
Complex kernel_ab(const Complex& z, long a, long b) {
    return inv(pow(z, a) * pow(conj(z), b));
}

long mod_inverse(long a, long N) {
    long t = 0, newt = 1, r = N, newr = ((a % N) + N) % N;
    while (newr != 0) {
        long q = r / newr;
        t -= q * newt;
        std::swap(t, newt);
        r -= q * newr;
        std::swap(r, newr);
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: not invertible");
    return ((t % N) + N) % N;
}

// kappa(tau) = min over max(|c|,|d|) = 1 of |c tau + d|; lattice points with
// max(|c|,|d|) = r then satisfy |c tau + d| >= kappa r
Real kappa_of(const Complex& tau, Prec wp) {
    Real y = tau.im.at_prec(wp);
    Real modt = abs(tau);
    Real one = Real::of(1L, wp);
    return y / max(one, modt);
}

}  // namespace

std::array<std::array<long, 2>, 2> invert_mod(const std::array<std::array<long, 2>, 2>& h, long N) {
    long det = ((h[0][0] * h[1][1] - h[0][1] * h[1][0]) % N + N) % N;
    long di = mod_inverse(det, N);
    auto m = [N](long x) { return ((x % N) + N) % N; };
    return {{{m(di * h[1][1]), m(-di * h[0][1])}, {m(-di * h[1][0]), m(di * h[0][0])}}};
}

// Phi_beta(c,d) = sum_v beta(h^{-1} v) e((c v1 + d v2)/N), tabulated mod N
static std::vector<Complex> beta_phase_table(const Divisor& beta, const EisensteinPoint& pt,
                                             Prec wp) {
    long N = beta.modulus();
    auto hinv = invert_mod(pt.h, N);
    std::vector<Complex> tab(N * N, Complex(wp));
    for (const auto& [key, val] : beta.support()) {
        // beta is evaluated at h^{-1} v: accumulate over v with h^{-1} v = key
        // i.e. v = h * key
        long v1 = ((pt.h[0][0] * key.first + pt.h[0][1] * key.second) % N + N) % N;
        long v2 = ((pt.h[1][0] * key.first + pt.h[1][1] * key.second) % N + N) % N;
        for (long c = 0; c < N; ++c)
            for (long d = 0; d < N; ++d) {
                mpq_class t = val.turn + mpq_class(c * v1 + d * v2, N);
                t.canonicalize();
                tab[c * N + d] += unit_root(t, wp) * Real::of(val.coeff, wp);
            }
    }
    (void)hinv;
    return tab;
}

Complex lattice_sum(long a, long b, const Divisor& beta, const EisensteinPoint& pt, Prec prec,
                    EvalInfo* info, double direct_target) {
    if (a + b <= 2)
        throw NotAbsolutelyConvergent("lattice sum E^{a,b} requires a + b >= 3 in direct mode");
    Prec wp = prec + 32;
    long N = beta.modulus();
    std::vector<Complex> tab = beta_phase_table(beta, pt, wp);
    Real phimax(wp);
    for (const auto& z : tab) phimax = max(phimax, abs(z));

    Real kappa = kappa_of(pt.tau, wp);
    // tail over shells r > R: 8 r * phimax / (kappa r)^{a+b}  summed:
    //   <= 8 phimax kappa^{-(a+b)} R^{2-a-b} / (a+b-2)
    Real target = max(Real::pow2(-(long)prec - 8, wp), Real::of(direct_target, wp));
    long R = 16;
    Real bound(wp);
    for (;; R *= 2) {
        bound = 8 * phimax * pow(kappa, -(a + b)) * pow(Real::of(R, wp), 2 - a - b) /
                Real::of(a + b - 2, wp);
        if (bound < target || R > (1L << 24)) break;
    }
    if (bound >= target)
        throw TruncationDominates("lattice_sum: cannot meet target error at radius 2^24");
    if (direct_target > 1e-24 && wp > 112) wp = 112;
    for (auto& t : tab) t = Complex(t.re.at_prec(wp), t.im.at_prec(wp));

    Complex sum(wp);
    Real x0 = pt.tau.re.at_prec(wp), y0 = pt.tau.im.at_prec(wp);
    for (long c = -R; c <= R; ++c) {
        Complex zrow(Real::of(c, wp) * x0 + Real::of(-R, wp), Real::of(c, wp) * y0);
        for (long d = -R; d <= R; ++d) {
            Complex z = zrow;
            zrow.re += 1;
            if (c == 0 && d == 0) continue;
            const Complex& omega = tab[((c % N + N) % N) * N + ((d % N + N) % N)];
            if (omega.is_zero()) continue;
            sum += omega * kernel_ab(z, a, b);
        }
    }
    if (info) {
        info->continued = false;
        info->tail_bound = bound.to_double();
        info->radius = R;
    }
    return Complex(sum.re.at_prec(prec), sum.im.at_prec(prec));
}

Complex lattice_sum_continued(long a, long b, const Divisor& beta, const EisensteinPoint& pt,
                              Prec prec) {
    // Write Phi_beta(c,d) = sum_v beta(h^{-1} v) e((c v1 + d v2)/N): the
    // lattice sum becomes a short phase-side combination over the support,
    //   E^{a,b}_beta = sum_v beta(h^{-1}v) Z_{u=(v1/N, v2/N)}(sigma),
    // kernel weight w = a - b at sigma = max(a, b), one engine call per
    // support point of beta.
    Prec wp = prec + 32;
    long N = beta.modulus();
    long w = a - b;
    Real sigma = Real::of(std::max(a, b), wp);
    Real gamma_sigma = gamma(sigma);
    Real pi = Real::pi(wp);

    Complex acc(wp);
    Complex pole0(wp), pole1(wp);
    bool saw0 = false, saw1 = false;
    for (const auto& [key, val] : beta.support()) {
        // v = h * key (so that beta(h^{-1} v) = beta(key))
        long v1 = ((pt.h[0][0] * key.first + pt.h[0][1] * key.second) % N + N) % N;
        long v2 = ((pt.h[1][0] * key.first + pt.h[1][1] * key.second) % N + N) % N;
        Complex coeff = val.to_complex(wp);
        auto r = completed_lattice_sum(pt.tau, w, 0, 0, mpq_class(v1, N), mpq_class(v2, N), sigma,
                                       wp);
        acc += coeff * r.value;
        if (r.pole_at_0) { saw0 = true; pole0 += coeff * r.residue0; }
        if (r.pole_at_w1) { saw1 = true; pole1 += coeff * r.residue1; }
    }
    // pole contributions (only the v = 0 support point has one) must vanish
    Real scale = max(Real::of(1L, wp), abs(acc));
    Real tol = Real::pow2(-(long)prec + 16, wp) * scale;
    if ((saw0 && abs(pole0) > tol) || (saw1 && abs(pole1) > tol))
        throw PoleEncountered("lattice_sum_continued: uncancelled pole (beta(0,0) != 0 at a = b = 1?)");
    Complex z = acc * pow(pi, sigma) / gamma_sigma;
    return Complex(z.re.at_prec(prec), z.im.at_prec(prec));
}

namespace {

// prefactor (-2 pi i)^{-w} pi^{-s} Gamma(s+w) y^s for direct mode (complex s)
Complex direct_prefactor(long w, const Complex& s, const Real& y, Prec wp) {
    Complex m2pii(Real(wp), Real::pi(wp) * (-2));
    Complex pref = pow(m2pii, Complex(Real::of(-w, wp)));
    Complex pis = pow(Complex(Real::pi(wp)), -s);
    Complex gam = cgamma(s + Complex(Real::of(w, wp)), wp);
    Complex ys = pow(Complex(y), s);
    return pref * pis * gam * ys;
}

// direct double sum of sum' e(<u,lambda>) (z_{lambda+v})^{-w} |z|^{-2s}
Complex direct_bare_sum(long w, mpq_class v2, mpq_class u1, const Complex& tau,
                        const Complex& s, Prec wp, Prec prec, EvalInfo* info, double direct_target) {
    v2.canonicalize();
    u1.canonicalize();
    double conv = w + 2 * s.re.to_double();
    if (conv <= 2.0) throw OutsideConvergence("direct Eisenstein sum needs w + 2 Re s > 2");
    Real kappa = kappa_of(tau, wp) * Real::of(0.5, wp);  // shifted lattice margin
    Real target = max(Real::pow2(-(long)prec - 8, wp), Real::of(direct_target, wp));
    Real expo = Real::of(w, wp) + 2 * s.re;
    long R = 16;
    Real bound(wp);
    for (;; R *= 2) {
        bound = 8 * pow(kappa, -expo) * pow(Real::of(R, wp), 2 - expo) / (expo - 2);
        if (bound < target || R > (1L << 22)) break;
    }
    if (bound >= target) throw TruncationDominates("series direct sum: radius cap exceeded");
    // power-law truncation already dominates the error; a reduced working
    // precision keeps the roundoff (~R^2 * 2^-wp) far below the tail bound
    if (direct_target > 1e-24 && wp > 112) wp = 112;
    Real x0 = tau.re.at_prec(wp), y0 = tau.im.at_prec(wp);
    Real v2r = Real::of(v2, wp);
    bool shift_zero = (v2 == 0);
    Complex sum(wp);
    for (long m = -R; m <= R; ++m) {
        Complex ph = u1 == 0 ? Complex::of(1, 0, wp) : unit_root(u1 * m, wp);
        Complex zrow(Real::of(m, wp) * x0 + v2r + Real::of(-R, wp), Real::of(m, wp) * y0);
        for (long n = -R; n <= R; ++n) {
            Complex z = zrow;
            zrow.re += 1;
            if (shift_zero && m == 0 && n == 0) continue;
            Real q = norm2(z);
            if (q.is_zero()) continue;
            // z^{-w} |z|^{-2s} = z^{-w} q^{-s}
            Complex qs = s.im.is_zero() ? Complex(pow(q, -s.re)) : pow(Complex(q), -s);
            Complex term = (w == 0) ? qs : inv(pow(z, w)) * qs;
            sum += ph * term;
        }
    }
    if (info) {
        info->continued = false;
        info->tail_bound = bound.to_double();
        info->radius = R;
    }
    return sum;
}

} // namespace

Complex series_E(long w, const mpq_class& alpha, const Complex& tau, const Complex& s, Prec prec,
                 EvalInfo* info, double direct_target) {
    if (w < 0) throw std::invalid_argument("series_E: w >= 0");
    Prec wp = prec + 32;
    Real y = tau.im.at_prec(wp);
    double conv = w + 2 * s.re.to_double();
    if (conv > 2.0 + 1e-9) {
        Complex bare = direct_bare_sum(w, alpha, 0, tau, s, wp, prec, info, direct_target);
        Complex r = direct_prefactor(w, s, y, wp) * bare;
        return Complex(r.re.at_prec(prec), r.im.at_prec(prec));
    }
    if (!s.im.is_zero())
        throw UnsupportedContinuationPoint("series_E continuation implemented for real s only");
    if (info) info->continued = true;
    Real sr = s.re.at_prec(wp);
    Real sigma = sr + w;
    auto res = completed_lattice_sum(tau, w, 0, alpha, 0, 0, sigma, wp);
    if (res.pole_at_0 || res.pole_at_w1)
        throw PoleEncountered("series_E: pole at this (w, alpha, s)");
    // E = (-2 pi i)^{-w} pi^{w} y^{s} G(sigma)
    Complex m2pii(Real(wp), Real::pi(wp) * (-2));
    Complex pref = inv(pow(m2pii, w)) * pow(Real::pi(wp), (long)w);
    Complex r = pref * pow(Complex(y), Complex(sr)) * res.value;
    return Complex(r.re.at_prec(prec), r.im.at_prec(prec));
}

Complex series_F(long w, const mpq_class& alpha, const Complex& tau, const Complex& s, Prec prec,
                 EvalInfo* info, double direct_target) {
    if (w < 0) throw std::invalid_argument("series_F: w >= 0");
    Prec wp = prec + 32;
    Real y = tau.im.at_prec(wp);
    double conv = w + 2 * s.re.to_double();
    if (conv > 2.0 + 1e-9) {
        Complex bare = direct_bare_sum(w, 0, alpha, tau, s, wp, prec, info, direct_target);
        Complex r = direct_prefactor(w, s, y, wp) * bare;
        return Complex(r.re.at_prec(prec), r.im.at_prec(prec));
    }
    if (!s.im.is_zero())
        throw UnsupportedContinuationPoint("series_F continuation implemented for real s only");
    if (info) info->continued = true;
    Real sr = s.re.at_prec(wp);
    Real sigma = sr + w;
    auto res = completed_lattice_sum(tau, w, 0, 0, alpha, 0, sigma, wp);
    if (res.pole_at_0 || res.pole_at_w1)
        throw PoleEncountered("series_F: pole at this (w, alpha, s)");
    Complex m2pii(Real(wp), Real::pi(wp) * (-2));
    Complex pref = inv(pow(m2pii, w)) * pow(Real::pi(wp), (long)w);
    Complex r = pref * pow(Complex(y), Complex(sr)) * res.value;
    return Complex(r.re.at_prec(prec), r.im.at_prec(prec));
}

Complex series_ENw(long w, long N, const Complex& tau, const Complex& s,
                   const DirichletCharacter& omega, Prec prec, EvalInfo* info, double direct_target) {
    if (w < 0) throw std::invalid_argument("series_ENw: w >= 0");
    if (omega.modulus() != N) throw std::invalid_argument("series_ENw: omega must have modulus N");
    Prec wp = prec + 32;
    double conv = w + 2 * s.re.to_double();
    if (conv > 2.0 + 1e-9) {
        // direct: sum over residue classes n = c mod N
        Complex acc(wp);
        EvalInfo worst;
        for (long c = 0; c < N; ++c) {
            RootOfUnity oc = omega(c == 0 ? N : c);
            if (oc.zero) continue;
            Complex bare = direct_bare_sum(w, mpq_class(c, N), 0, tau, s, wp, prec, info, direct_target);
            acc += oc.to_complex(wp) * bare;
            if (info) worst = *info;
        }
        if (info) *info = worst;
        // scale N^{-(w+2s)}
        Complex scale = pow(Complex(Real::of(N, wp)), -(s * 2 + Complex(Real::of(w, wp))));
        Complex r = acc * scale;
        return Complex(r.re.at_prec(prec), r.im.at_prec(prec));
    }
    if (!s.im.is_zero())
        throw UnsupportedContinuationPoint("series_ENw continuation implemented for real s only");
    if (info) info->continued = true;
    Real sr = s.re.at_prec(wp);
    Real sigma = sr + w;
    // bare Z_c via engine; E = N^{-(w+2s)} sum_c omega(c) pi^sigma G_c / Gamma(sigma)
    // Gamma(sigma) poles at non-positive integers: the continued value is then 0
    bool gamma_pole = sigma <= 0 && floor_r(sigma) == sigma;
    Complex acc(wp);
    for (long c = 0; c < N; ++c) {
        RootOfUnity oc = omega(c == 0 ? N : c);
        if (oc.zero) continue;
        auto res = completed_lattice_sum(tau, w, 0, mpq_class(c, N), 0, 0, sigma, wp);
        if (res.pole_at_0 || res.pole_at_w1)
            throw PoleEncountered("series_ENw: pole at this point");
        acc += oc.to_complex(wp) * res.value;
    }
    if (gamma_pole) return Complex(prec);  // trivial zero of the bare sum
    Complex z = acc * pow(Real::pi(wp), sigma) / gamma(sigma);
    Complex scale = pow(Complex(Real::of(N, wp)), Complex(-(sr * 2 + w)));
    Complex r = z * scale;
    return Complex(r.re.at_prec(prec), r.im.at_prec(prec));
}

Complex gamma_E_limit(long w, long N, const Complex& tau, const DirichletCharacter& omega,
                      long lprime, Prec prec) {
    if (w < 0 || lprime < 0) throw std::invalid_argument("gamma_E_limit: w, lprime >= 0");
    if (omega.modulus() != N) throw std::invalid_argument("gamma_E_limit: omega must have modulus N");
    if (w == 0 && lprime == 0 && omega.is_principal())
        throw PoleEncountered("gamma_E_limit: w = 0, s = 0 with principal omega");
    Prec wp = prec + 32;
    // lim Gamma(s+w) E_{w,N}(tau,s,omega) at s = -lprime
    //   = pi^{w-lprime} N^{2 lprime - w} sum_c omega(c) G_c(w - lprime)
    Real sigma = Real::of(w - lprime, wp);
    Complex acc(wp);
    Complex pole0(wp), pole1(wp);
    bool saw = false;
    for (long c = 0; c < N; ++c) {
        RootOfUnity oc = omega(c == 0 ? N : c);
        if (oc.zero) continue;
        auto res = completed_lattice_sum(tau, w, 0, mpq_class(c, N), 0, 0, sigma, wp);
        acc += oc.to_complex(wp) * res.value;
        if (res.pole_at_0) { saw = true; pole0 += oc.to_complex(wp) * res.residue0; }
        if (res.pole_at_w1) { saw = true; pole1 += oc.to_complex(wp) * res.residue1; }
    }
    if (saw) {
        Real scale = max(Real::of(1L, wp), abs(acc));
        Real tol = Real::pow2(-(long)prec + 16, wp) * scale;
        if (abs(pole0) > tol || abs(pole1) > tol)
            throw PoleEncountered("gamma_E_limit: uncancelled pole");
    }
    Real piw = pow(Real::pi(wp), Real::of(w - lprime, wp));
    Real Nf = pow(Real::of(N, wp), Real::of(2 * lprime - w, wp));
    Complex r = acc * piw * Nf;
    return Complex(r.re.at_prec(prec), r.im.at_prec(prec));
}

BridgeCheck bridge_check(long k, long l, long j, const DirichletCharacter& chi, const Complex& tau,
                         long a_comp, Prec prec, bool lhs_direct) {
    if (!(0 <= j && j <= k && k <= l)) throw std::invalid_argument("bridge_check: need 0 <= j <= k <= l");
    long kp = k - j, lp = l - j;
    long N = chi.modulus();
    if (gcd_ll(a_comp, N) != 1) throw std::invalid_argument("bridge_check: a must be a unit mod N");
    Prec wp = prec + 16;

    Divisor b = beta_chi(chi);
    EisensteinPoint pt{Complex(tau.re.at_prec(wp), tau.im.at_prec(wp)),
                       {{{0, N - 1}, {a_comp % N, 0}}}};  // [[0,-1],[a,0]] mod N
    Complex lhs = lhs_direct ? lattice_sum(lp + 1, kp + 1, b, pt, wp, nullptr, 1e-12)
                             : lattice_sum_continued(lp + 1, kp + 1, b, pt, wp);

    // rhs prefactor pi^{k'+l'+1} / (l'! N^{k'+l'} y^{k'+l'+1})
    Real y = tau.im.at_prec(wp);
    Real pref = pow(Real::pi(wp), kp + lp + 1) /
                (Real::of(factorial_z((unsigned)lp), wp) * pow(Real::of(N, wp), kp + lp) *
                 pow(y, kp + lp + 1));
    Complex rhs = Complex(pref) * gamma_E_limit(l - k, N, pt.tau, chi.conjugate(), lp, wp);

    BridgeCheck out{Complex(lhs.re.at_prec(prec), lhs.im.at_prec(prec)),
                    Complex(rhs.re.at_prec(prec), rhs.im.at_prec(prec)), Real(prec)};
    Real denom = max(abs(out.lhs), abs(out.rhs));
    out.rel_err = denom.is_zero() ? abs(out.lhs - out.rhs) : abs(out.lhs - out.rhs) / denom;
    return out;
}

} // namespace rankin
