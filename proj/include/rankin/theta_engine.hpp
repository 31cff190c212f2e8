#pragma once

// Analytic continuation engine for twisted, shifted, harmonically weighted
// binary lattice sums.  For tau in the upper half plane, integer w, rational
// shift v and phase u, and real sigma, it evaluates the completed function
//
//   G(sigma) = pi^{-sigma} Gamma(sigma) * sum'_{lambda in Z^2}
//                e(<u,lambda>) H_w(z_{lambda+v}) |z_{lambda+v}|^{-2 sigma}
//
// where z_{(m,n)} = m tau + n, H_w(z) = conj(z)^w for w >= 0 and z^{-w} for
// w < 0, and the prime omits lambda + v = 0.  The Riemann splitting of the
// associated theta function gives two incomplete-gamma series with Gaussian
// term decay, valid at every sigma; the only possible poles are simple ones
// at sigma = 0 (when w = 0 and v is integral) and sigma = |w|+1 (when w = 0
// and u is integral), whose residues are reported instead of folded in.

#include "rankin/complexnum.hpp"

#include <gmpxx.h>

namespace rankin {

struct ThetaEngineResult {
    Complex value;           // finite part of G(sigma)
    bool pole_at_0 = false;  // sigma == 0 exactly and the 1/sigma term is present
    bool pole_at_w1 = false; // sigma == |w|+1 exactly and the 1/(sigma-|w|-1) term is present
    Complex residue0;        // residue of the 1/sigma term (with all prefactors)
    Complex residue1;        // residue of the 1/(sigma-|w|-1) term
};

ThetaEngineResult completed_lattice_sum(const Complex& tau, long w, mpq_class v1, mpq_class v2,
                                        mpq_class u1, mpq_class u2, const Real& sigma, Prec prec);

} // namespace rankin
