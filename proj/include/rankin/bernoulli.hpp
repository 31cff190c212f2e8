#pragma once

// Exact Bernoulli numbers/polynomials over Q and generalized Bernoulli
// numbers attached to a Dirichlet character.

#include "rankin/characters.hpp"

#include <gmpxx.h>

namespace rankin {

// B_k, with B_1 = -1/2
const mpq_class& bernoulli_number(unsigned k);

// exact B_k(x)
mpq_class bernoulli_polynomial(unsigned k, const mpq_class& x);

// <x>: representative of x mod 1 in [0,1)
mpq_class frac_part(const mpq_class& x);

mpz_class binomial_z(unsigned n, unsigned k);
mpz_class factorial_z(unsigned n);

// B_{k,chi} = N^{k-1} sum_{a=1}^{N} chi(a) B_k(a/N); exact, requires chi
// rational-valued (order <= 2)
mpq_class generalized_bernoulli_rational(unsigned k, const DirichletCharacter& chi);

// same, as a complex number for arbitrary chi
Complex generalized_bernoulli(unsigned k, const DirichletCharacter& chi, Prec prec);

} // namespace rankin
