#pragma once

// Exact q-expansions: eta quotients, Eisenstein series E_k^{psi,phi}, series
// products, Hecke operators, and eigenform extraction for the small spaces
// this project needs.  Coefficients live in a cyclotomic field, stored as
// integer coordinate vectors over a common denominator.

#include "rankin/cyclotomic.hpp"
#include "rankin/errors.hpp"

#include <vector>

namespace rankin {

// ---- eta quotients ---------------------------------------------------------

struct EtaQuotient {
    std::vector<std::pair<long, long>> terms;  // (divisor d, exponent r_d)
    mpq_class weight() const;                  // (1/2) sum r_d
    mpq_class valuation() const;               // (1/24) sum d r_d
};

// a_1..a_{n_max} of the normalized expansion (leading coefficient shifted to
// index 1); throws NotHolomorphic unless the q-valuation is a positive integer
std::vector<mpz_class> eta_expand(const EtaQuotient& q, long n_max);

// ---- q-series over a cyclotomic field --------------------------------------

struct QSeries {
    const CycloField* F = nullptr;
    mpz_class den = 1;                          // common denominator
    std::vector<std::vector<mpz_class>> c;      // c[n] = integer coords of den * a_n

    long length() const { return (long)c.size(); }
    CycloField::Elem value(long n) const;       // a_n as field element
};

QSeries qs_zero(const CycloField& F, long len);
QSeries qs_add(const QSeries& a, const QSeries& b);
QSeries qs_mul(const QSeries& a, const QSeries& b);
QSeries qs_scale(const QSeries& a, const mpq_class& q);
QSeries qs_rescale_tau(const QSeries& a, long d);   // f(tau) -> f(d tau)
QSeries qs_pow(const QSeries& a, long e);

// E_k^{psi,phi}: constant term -B_{k,phi}/(2k) if psi trivial mod 1, else 0;
// a_n = sum_{d|n} psi(n/d) phi(d) d^{k-1}
QSeries eisenstein_qexp(long k, const DirichletCharacter& psi, const DirichletCharacter& phi,
                        long n_max, const CycloField& F);
// holomorphic weight-2 level-N series (N-1)/24 + sum (sigma_1(n) - N sigma_1(n/N)) q^n
QSeries eisenstein2_level(long N, long n_max, const CycloField& F);

// T_p on q-expansions in M_k(N,chi); needs length >= p*(result length)
QSeries hecke_tp(const QSeries& f, long p, long k, const DirichletCharacter& chi);

// ---- eigenform extraction ---------------------------------------------------

struct NewformQexp {
    const CycloField* F = nullptr;
    long weight = 0;   // k+2 in the paper's indexing; stored as the actual weight
    long level = 0;
    DirichletCharacter neben{1};
    std::vector<CycloField::Elem> an;  // an[n], 1-based; an[0] unused
    CycloField::Elem a(long n) const { return an.at(n); }
};

// Extract the unique cuspidal Hecke eigenform from a spanning basis of
// M_k(N,chi) by diagonalizing T_p (p coprime to N) and deflating the known
// Eisenstein eigenvalues.  The cuspidal part must be 1-dimensional.
NewformQexp extract_newform(const std::vector<QSeries>& basis, long weight, long level,
                            const DirichletCharacter& chi, long hecke_p,
                            const std::vector<CycloField::Elem>& eisenstein_eigenvalues,
                            long n_max);

// catalog: exact generators for the forms the pipelines need
NewformQexp make_newform_delta(long n_max);      // 1.12.a.a, via eta^24 (cyclo field Q)
NewformQexp make_newform_11_2_a(long n_max);     // eta(t)^2 eta(11t)^2 cross-checked basis route
NewformQexp make_newform_3_8_a(long n_max);      // weight 8 level 3, a_3 = -27
NewformQexp make_newform_13_2_e(long n_max);     // weight 2 level 13, sextic nebentypus
// weight-3 quadratic-nebentypus spaces (stretch fixtures); cuspidal dim may be
// 2, in which case coefficients are delivered per complex embedding
std::vector<std::vector<Complex>> make_weight3_embeddings(long level, long n_max, Prec prec,
                                                          DirichletCharacter* chi_out);

std::vector<long> primes_up_to(long n);
bool is_prime_long(long n);

} // namespace rankin
