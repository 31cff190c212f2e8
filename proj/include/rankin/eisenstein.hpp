#pragma once

// The Eisenstein-type series of the analytic pipeline: lattice sums
// E^{a,b}_beta(tau,h), the real-analytic series E^{(w)}_alpha and
// F^{(w)}_alpha, the level series E_{w,N}(tau,s,omega), the regulated limit
// lim_{s -> -l'} Gamma(s+w) E_{w,N}(tau,s,omega), and the bridge identity
// tying the two sides together.

#include "rankin/characters.hpp"
#include "rankin/divisor.hpp"
#include "rankin/errors.hpp"
#include "rankin/theta_engine.hpp"

#include <array>

namespace rankin {

struct EvalInfo {
    bool continued = false;    // continuation branch used (vs direct summation)
    double tail_bound = 0.0;   // rigorous truncation bound for direct mode
    long radius = 0;           // direct-mode cutoff
};

// absolute truncation target for direct lattice summation (power-law tails
// make full working precision unreachable; continued mode has no such limit)
inline constexpr double kDirectTargetDefault = 1e-13;

struct EisensteinPoint {
    Complex tau;
    std::array<std::array<long, 2>, 2> h;  // element of GL_2(Z/N)
};

// 2x2 matrix inverse mod N (requires det invertible)
std::array<std::array<long, 2>, 2> invert_mod(const std::array<std::array<long, 2>, 2>& h, long N);

// direct truncated lattice sum E^{a,b}_beta(tau, h) with rigorous tail bound;
// throws NotAbsolutelyConvergent when a + b <= 2
Complex lattice_sum(long a, long b, const Divisor& beta, const EisensteinPoint& pt, Prec prec,
                    EvalInfo* info = nullptr, double direct_target = kDirectTargetDefault);

// same value through the theta-engine continuation (valid for a + b <= 2 as
// well, with residue cancellation across the residue-class decomposition)
Complex lattice_sum_continued(long a, long b, const Divisor& beta, const EisensteinPoint& pt,
                              Prec prec);

// E^{(w)}_alpha(tau, s) and F^{(w)}_alpha(tau, s); s complex in direct mode
// (w + 2 Re s > 2), real anywhere in continued mode
Complex series_E(long w, const mpq_class& alpha, const Complex& tau, const Complex& s, Prec prec,
                 EvalInfo* info = nullptr, double direct_target = kDirectTargetDefault);
Complex series_F(long w, const mpq_class& alpha, const Complex& tau, const Complex& s, Prec prec,
                 EvalInfo* info = nullptr, double direct_target = kDirectTargetDefault);

// E_{w,N}(tau, s, omega)
Complex series_ENw(long w, long N, const Complex& tau, const Complex& s,
                   const DirichletCharacter& omega, Prec prec, EvalInfo* info = nullptr,
                   double direct_target = kDirectTargetDefault);

// lim_{s -> -lprime} Gamma(s + w) E_{w,N}(tau, s, omega)
Complex gamma_E_limit(long w, long N, const Complex& tau, const DirichletCharacter& omega,
                      long lprime, Prec prec);

// both sides of the section-6 lemma at (k, l, j):
//   lhs = E^{l'+1,k'+1}_{beta_chi}(tau, [[0,-1],[a,0]])
//   rhs = pi^{k'+l'+1} / (l'! N^{k'+l'} y^{k'+l'+1}) * gamma_E_limit(l-k, N, tau, conj(chi), l')
struct BridgeCheck {
    Complex lhs, rhs;
    Real rel_err;
};
BridgeCheck bridge_check(long k, long l, long j, const DirichletCharacter& chi, const Complex& tau,
                         long a_comp, Prec prec, bool lhs_direct = false);

} // namespace rankin
