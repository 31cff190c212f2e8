#pragma once

// Degree-zero divisors on (Z/N)^2.  Values are exact monomials
// coeff * e(turn) with rational coeff and rational turn, which covers both
// plain rational divisors and the character divisor beta_chi.

#include "rankin/characters.hpp"
#include "rankin/errors.hpp"

#include <map>

namespace rankin {

struct DivisorValue {
    mpq_class coeff = 0;
    mpq_class turn = 0;  // value = coeff * e(turn), turn canonical in [0,1)

    bool is_zero() const { return coeff == 0; }
    bool is_rational() const { return coeff == 0 || turn == 0; }
    Complex to_complex(Prec prec) const;
    DivisorValue scaled(const mpq_class& c) const;
    // defined when the turns agree (or one side vanishes)
    DivisorValue plus(const DivisorValue& o) const;
    void canonicalize();
};

class Divisor {
public:
    explicit Divisor(long modulus) : N_(modulus) {
        if (modulus < 1) throw std::invalid_argument("divisor modulus must be >= 1");
    }

    long modulus() const { return N_; }
    void set(long v1, long v2, DivisorValue val);
    void set_rational(long v1, long v2, const mpq_class& c);
    DivisorValue at(long v1, long v2) const;  // zero off support
    const std::map<std::pair<long, long>, DivisorValue>& support() const { return vals_; }

    bool is_degree_zero() const;  // exact (cyclotomic) check
    Divisor scaled(const mpq_class& c) const;
    Divisor plus(const Divisor& o) const;

private:
    long N_;
    std::map<std::pair<long, long>, DivisorValue> vals_;
};

// beta_chi(v1,v2) = conj(chi)(-v2) on v1 = 0; throws TrivialCharacter
Divisor beta_chi(const DirichletCharacter& chi);

} // namespace rankin
