#pragma once

// Hurwitz zeta by Euler-Maclaurin and Dirichlet L-functions via the
// decomposition L(chi,s) = N^{-s} sum_{u=1}^{N} chi(u) zeta(s, u/N).

#include "rankin/bernoulli.hpp"
#include "rankin/characters.hpp"
#include "rankin/errors.hpp"

namespace rankin {

// zeta(s, a) for a > 0, continued to all s != 1
Complex hurwitz_zeta(const Complex& s, const mpq_class& a, Prec prec);

// analytically continued L(chi, s); throws PoleAtOne for principal chi at s=1
Complex dirichlet_L(const DirichletCharacter& chi, const Complex& s, Prec prec);

// direct-series oracle, Re(s) > 1
Complex dirichlet_L_series(const DirichletCharacter& chi, const Complex& s, long n_max, Prec prec);

} // namespace rankin
