#pragma once

// Gamma-family special functions at arbitrary precision: complex Gamma via
// Spouge's approximation, upper incomplete Gamma(a,x) for real a and x > 0
// (continued fraction / series / integer-a recurrences), exponential
// integral E1, and the a-derivative of the upper incomplete gamma at
// positive integer a.

#include "rankin/complexnum.hpp"

namespace rankin {

// Gamma(s) for complex s (poles at non-positive integers raise)
Complex cgamma(const Complex& s, Prec prec);
Complex clngamma(const Complex& s, Prec prec);

// Upper incomplete Gamma(a, x), real a (any sign, integers allowed), x > 0
Real upper_gamma(const Real& a, const Real& x, Prec prec);
Real upper_gamma(long a, const Real& x, Prec prec);

// E1(x) = Gamma(0, x)
Real expint_e1(const Real& x, Prec prec);

// d/da Gamma(a, x) at integer a >= 1:
// T(a,x) = int_x^inf t^{a-1} e^{-t} log t dt
Real upper_gamma_dloga(long a, const Real& x, Prec prec);

} // namespace rankin
