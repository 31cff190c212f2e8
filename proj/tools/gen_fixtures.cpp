// Writes the newform coefficient fixture files used by the test suites:
// exact q-expansion data for 1.12.a.a, 3.8.a.a, 11.2.a.a, 13.2.e.a, and the
// synthetic Hecke-multiplicative stand-in for the level-39 weight-8 form
// 39.8.5a (a_3 = -27 pinned; good-prime values are a deterministic
// Deligne-bounded stream, not database data).

#include "rankin/forms.hpp"

#include <cstdio>
#include <cmath>

using namespace rankin;

static Newform synth_39_8(long n_max) {
    Newform f;
    f.weight = 8;
    f.level = 39;
    f.neben = DirichletCharacter::kronecker(13, 39);
    f.label = "39.8.5a";
    f.source = "file";
    f.an_.assign(n_max + 1, {});
    // prime values
    std::vector<mpz_class> ap(n_max + 1, 0);
    auto prime_value = [&](long p) -> mpz_class {
        if (p == 3) return -27;
        if (p == 13) return 2197;
        // deterministic bounded stream inside the Deligne window
        double bound = 2.0 * std::pow((double)p, 3.5);
        unsigned long long h = 1469598103934665603ull;
        for (unsigned long long x = (unsigned long long)p; x; x >>= 8) {
            h ^= (x & 0xff);
            h *= 1099511628211ull;
        }
        double frac = (double)(h % 1000000007ull) / 1000000007.0;
        double v = (2.0 * frac - 1.0) * bound;
        mpz_class r;
        mpz_set_d(r.get_mpz_t(), v);
        return r;
    };
    // multiplicative assembly
    std::vector<mpq_class> a(n_max + 1, 0);
    a[1] = 1;
    for (long n = 2; n <= n_max; ++n) {
        auto fac = factorize(n);
        if (fac.size() == 1) {
            long p = fac[0].first;
            int e = fac[0].second;
            if (e == 1) {
                a[n] = mpq_class(prime_value(p));
            } else if (39 % p == 0) {
                // p || N: a_{p^e} = a_p^e
                a[n] = a[n / p] * a[p];
            } else {
                // good prime recurrence with chi(p) p^{7}
                mpz_class pk = 1;
                for (int i = 0; i < 7; ++i) pk *= p;
                mpq_class chi = f.neben(p).rational_value();
                a[n] = a[p] * a[n / p] - chi * mpq_class(pk) * a[n / (p * p)];
            }
        } else {
            long pp = 1;
            for (int i = 0; i < fac[0].second; ++i) pp *= fac[0].first;
            a[n] = a[pp] * a[n / pp];
        }
    }
    for (long n = 1; n <= n_max; ++n) {
        Newform::Coeff c;
        a[n].canonicalize();
        c.exact = {1L, std::vector<mpq_class>{a[n]}};
        f.an_[n] = c;
    }
    return f;
}

int main(int argc, char** argv) {
    std::filesystem::path out = argc > 1 ? argv[1] : "tests/fixtures";
    long n = argc > 2 ? atol(argv[2]) : 2000;
    std::filesystem::create_directories(out);

    auto delta = Newform::from_eta(EtaQuotient{{{1, 24}}}, 12, 1, "1.12.a.a", n);
    write_cache_file(out / "1.12.a.a.jsonl", delta, n);
    std::printf("wrote 1.12.a.a.jsonl (tau(6) = %s)\n", delta.a_rational(6)->get_str().c_str());

    auto g11 = Newform::from_eta(EtaQuotient{{{1, 2}, {11, 2}}}, 2, 11, "11.2.a.a", n);
    write_cache_file(out / "11.2.a.a.jsonl", g11, n);
    std::printf("wrote 11.2.a.a.jsonl\n");

    auto g3 = Newform::from_qexp_generator("3.8.a.a", n);
    write_cache_file(out / "3.8.a.a.jsonl", g3, n);
    std::printf("wrote 3.8.a.a.jsonl (a_3 = %s)\n", g3.a_rational(3)->get_str().c_str());

    auto f13 = Newform::from_qexp_generator("13.2.e.a", n);
    write_cache_file(out / "13.2.e.a.jsonl", f13, n);
    std::printf("wrote 13.2.e.a.jsonl\n");

    auto f39 = synth_39_8(n);
    write_cache_file(out / "39.8.5a.jsonl", f39, n);
    std::printf("wrote 39.8.5a.jsonl (a_3 = %s, a_13 = %s)\n", f39.a_rational(3)->get_str().c_str(),
                f39.a_rational(13)->get_str().c_str());
    return 0;
}
