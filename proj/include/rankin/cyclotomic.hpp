#pragma once

// Exact arithmetic in small cyclotomic fields Q(zeta_m), elements in the
// power basis 1, zeta, ..., zeta^{phi(m)-1} reduced mod the m-th cyclotomic
// polynomial.  Only small m occur (divisors of 12 in the shipped pipelines),
// but the construction is generic.

#include "rankin/characters.hpp"

#include <gmpxx.h>
#include <vector>

namespace rankin {

class CycloField {
public:
    using Elem = std::vector<mpq_class>;  // length degree()

    explicit CycloField(long m);

    long conductor() const { return m_; }
    long degree() const { return deg_; }

    Elem zero() const { return Elem(deg_, mpq_class(0)); }
    Elem one() const { return from_rational(1); }
    Elem from_rational(const mpq_class& q) const;
    // zeta_m^k, any integer k
    Elem zeta_pow(long k) const;
    // e(turn) with turn denominator dividing m
    Elem from_root_of_unity(const RootOfUnity& r) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem mul_scalar(const Elem& a, const mpq_class& q) const;
    Elem inverse(const Elem& a) const;  // throws on zero
    Elem conj(const Elem& a) const;     // zeta -> zeta^{-1}
    bool is_zero(const Elem& a) const;
    bool equal(const Elem& a, const Elem& b) const;
    // exact rational content if the element is rational, else nullopt
    std::optional<mpq_class> as_rational(const Elem& a) const;

    Complex embed(const Elem& a, Prec prec) const;  // zeta_m -> e(1/m)

    const std::vector<mpq_class>& cyclotomic_polynomial() const { return phi_; }

private:
    long m_;
    long deg_;
    std::vector<mpq_class> phi_;                      // monic, coefficients 0..deg_
    std::vector<std::vector<mpq_class>> pow_table_;   // x^(deg_+i) reduced, i = 0..deg_-2
};

// coefficients of the m-th cyclotomic polynomial (exact recursion)
std::vector<mpq_class> cyclotomic_polynomial(long m);

} // namespace rankin
