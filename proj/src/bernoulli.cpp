#include "rankin/bernoulli.hpp"

#include <mutex>
#include <vector>

namespace rankin {

mpz_class binomial_z(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

mpz_class factorial_z(unsigned n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

const mpq_class& bernoulli_number(unsigned k) {
    static std::vector<mpq_class> cache{mpq_class(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    // sum_{j=0}^{n} C(n+1,j) B_j = 0 for n >= 1
    while (cache.size() <= k) {
        unsigned n = cache.size();
        mpq_class s = 0;
        for (unsigned j = 0; j < n; ++j) s += mpq_class(binomial_z(n + 1, j)) * cache[j];
        mpq_class b = -s / mpq_class(binomial_z(n + 1, n));
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[k];
}

mpq_class bernoulli_polynomial(unsigned k, const mpq_class& x_in) {
    mpq_class x = x_in;
    x.canonicalize();
    // B_k(x) = sum_j C(k,j) B_j x^{k-j}
    mpq_class r = 0, xp = 1;
    // Horner from the top: iterate j descending so powers of x build up
    for (int j = (int)k; j >= 0; --j) {
        r += mpq_class(binomial_z(k, (unsigned)j)) * bernoulli_number((unsigned)j) * xp;
        xp *= x;
    }
    r.canonicalize();
    return r;
}

mpq_class frac_part(const mpq_class& x) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    mpq_class r = x - mpq_class(fl);
    r.canonicalize();
    return r;
}

mpq_class generalized_bernoulli_rational(unsigned k, const DirichletCharacter& chi) {
    if (!chi.is_rational())
        throw std::invalid_argument("generalized_bernoulli_rational: character has irrational values");
    long N = chi.modulus();
    mpq_class s = 0;
    for (long a = 1; a <= N; ++a) {
        RootOfUnity v = chi(a);
        if (v.zero) continue;
        s += v.rational_value() * bernoulli_polynomial(k, mpq_class(a, N));
    }
    mpq_class scale{mpz_class(N)};
    mpq_class r = s;
    for (unsigned i = 1; i < k; ++i) r *= scale;
    if (k == 0) r /= scale;
    r.canonicalize();
    return r;
}

Complex generalized_bernoulli(unsigned k, const DirichletCharacter& chi, Prec prec) {
    long N = chi.modulus();
    Complex s(prec);
    for (long a = 1; a <= N; ++a) {
        RootOfUnity v = chi(a);
        if (v.zero) continue;
        s += v.to_complex(prec) * Real::of(bernoulli_polynomial(k, mpq_class(a, N)), prec);
    }
    Real scale = pow(Real::of((long)N, prec), (long)k - 1);
    return s * scale;
}

} // namespace rankin
