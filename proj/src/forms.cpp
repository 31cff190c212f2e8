#include "rankin/forms.hpp"

#include <cmath>

namespace rankin {

Complex Newform::Coeff::to_complex(Prec prec) const {
    if (exact) {
        const CycloField& F = cyclo_field(exact->first);
        return F.embed(exact->second, prec);
    }
    if (emb) {
        return *emb;
    }
    throw std::logic_error("Newform coefficient has no value");
}

std::optional<mpq_class> Newform::Coeff::rational() const {
    if (!exact) return std::nullopt;
    const CycloField& F = cyclo_field(exact->first);
    return F.as_rational(exact->second);
}

Newform::Coeff Newform::Coeff::conjugated() const {
    Coeff c;
    if (exact) {
        const CycloField& F = cyclo_field(exact->first);
        c.exact = {exact->first, F.conj(exact->second)};
    }
    if (emb) c.emb = conj(*emb);
    return c;
}

void Newform::ensure(long n) {
    if (available() >= n) return;
    if (!extender_) throw NotEnoughCoefficients("form " + label + " has " + std::to_string(available()) +
                                                " coefficients, needs " + std::to_string(n));
    extender_(*this, n);
    if (available() < n)
        throw NotEnoughCoefficients("extender for " + label + " failed to reach n = " + std::to_string(n));
}

const Newform::Coeff& Newform::a(long n) const {
    if (n < 1 || n > available())
        throw NotEnoughCoefficients("coefficient a_" + std::to_string(n) + " of " + label + " not available");
    return an_[n];
}

Newform Newform::from_eta(const EtaQuotient& q, long weight, long level, const std::string& label,
                          long n_init) {
    Newform f;
    f.weight = weight;
    f.level = level;
    f.neben = DirichletCharacter(level);
    f.label = label;
    f.source = "eta";
    f.an_.resize(1);
    f.extender_ = [q](Newform& self, long n) {
        auto c = eta_expand(q, n);
        self.an_.resize(n + 1);
        for (long i = 1; i <= n; ++i) {
            Coeff co;
            co.exact = {1L, std::vector<mpq_class>{mpq_class(c[i - 1])}};
            self.an_[i] = co;
        }
    };
    f.ensure(n_init);
    return f;
}

Newform Newform::from_qexp_generator(const std::string& label, long n_init) {
    auto gen = [label](long n) -> NewformQexp {
        if (label == "11.2.a.a") return make_newform_11_2_a(n);
        if (label == "3.8.a.a") return make_newform_3_8_a(n);
        if (label == "13.2.e.a") return make_newform_13_2_e(n);
        throw NotFound("no exact q-expansion generator for label " + label);
    };
    NewformQexp first = gen(std::max<long>(n_init, 16));
    Newform f;
    f.weight = first.weight;
    f.level = first.level;
    f.neben = first.neben;
    f.label = label;
    f.source = "qexp";
    f.an_.resize(1);
    auto fill = [](Newform& self, const NewformQexp& nf, long n) {
        long m = nf.F->conductor();
        self.an_.resize(n + 1);
        for (long i = 1; i <= n; ++i) {
            Coeff co;
            co.exact = {m, nf.an[i]};
            self.an_[i] = co;
        }
    };
    fill(f, first, (long)first.an.size() - 1);
    f.extender_ = [gen, fill](Newform& self, long n) { fill(self, gen(n), n); };
    return f;
}

Newform Newform::from_embeddings(const std::string& label, long level, long weight,
                                 const DirichletCharacter& chi, std::vector<Complex> an,
                                 int embedding, Prec stored_prec) {
    Newform f;
    f.weight = weight;
    f.level = level;
    f.neben = chi;
    f.label = label;
    f.source = "qexp";
    f.embedding = embedding;
    f.stored_prec = stored_prec;
    f.an_.resize(an.size());
    for (size_t i = 1; i < an.size(); ++i) {
        Coeff c;
        c.emb = an[i];
        f.an_[i] = c;
    }
    return f;
}

Newform dual_form(const Newform& f) {
    Newform g = f;
    g.label = f.label + "*";
    g.neben = f.neben.conjugate();
    for (size_t i = 1; i < g.an_.size(); ++i) g.an_[i] = f.an_[i].conjugated();
    if (f.extender_) {
        auto base = f.extender_;
        g.extender_ = [base](Newform& self, long n) {
            Newform tmp;
            tmp.label = self.label;
            tmp.an_.resize(1);
            tmp.extender_ = base;
            tmp.ensure(n);
            self.an_.resize(n + 1);
            for (long i = 1; i <= n; ++i) self.an_[i] = tmp.an_[i].conjugated();
        };
    }
    return g;
}

std::vector<HeckeViolation> hecke_validate(Newform& f, long n_max) {
    std::vector<HeckeViolation> out;
    f.ensure(n_max);
    Prec p = std::max<Prec>(f.stored_prec, 128);
    Real tol = Real::pow2(-(long)p / 2, p);
    Real reltol = Real::of(1e-6, p);

    auto close = [&](const Complex& x, const Complex& y) {
        Real scale = max(Real::of(1L, p), max(abs(x), abs(y)));
        return (abs(x - y) / scale) < tol;
    };
    auto eqc = [&](const Newform::Coeff& x, const Complex& y) { return close(x.to_complex(p), y); };

    {
        Complex one = Complex::of(1, 0, p);
        if (!eqc(f.a(1), one)) out.push_back({1, "a1", "a_1 != 1"});
    }
    // multiplicativity: n = (smallest prime power) * rest
    for (long n = 2; n <= n_max; ++n) {
        auto fac = factorize(n);
        if (fac.size() < 2) continue;
        long pp = 1;
        for (int i = 0; i < fac[0].second; ++i) pp *= fac[0].first;
        long rest = n / pp;
        const auto& cn = f.a(n);
        if (cn.exact && f.a(pp).exact && f.a(rest).exact && f.a(pp).exact->first == cn.exact->first &&
            f.a(rest).exact->first == cn.exact->first) {
            const CycloField& F = cyclo_field(cn.exact->first);
            auto prod = F.mul(f.a(pp).exact->second, f.a(rest).exact->second);
            if (!F.equal(cn.exact->second, prod))
                out.push_back({n, "mult", "a_" + std::to_string(n) + " != a_" + std::to_string(pp) +
                                              " * a_" + std::to_string(rest)});
        } else {
            Complex prod = f.ac(pp, p) * f.ac(rest, p);
            if (!close(f.ac(n, p), prod))
                out.push_back({n, "mult", "a_" + std::to_string(n) + " != a_" + std::to_string(pp) +
                                              " * a_" + std::to_string(rest)});
        }
    }
    // p-power recurrence at good primes
    for (long q : primes_up_to(n_max)) {
        if (f.level % q == 0) continue;
        RootOfUnity chp = f.neben(q);
        mpz_class pk = 1;
        for (long i = 1; i < f.weight; ++i) pk *= q;
        long pr = q;  // q^r
        for (long r = 1;; ++r) {
            if (pr > n_max / q) break;
            long prp1 = pr * q;
            long prm1 = pr / q;  // q^{r-1}, = 1 at r = 1 (a_1 = 1)
            Complex rhs = f.ac(q, p) * f.ac(pr, p) -
                          chp.to_complex(p) * Real::of(pk, p) * f.ac(prm1, p);
            if (!close(f.ac(prp1, p), rhs))
                out.push_back({prp1, "recurrence",
                               "p-power recurrence fails at p = " + std::to_string(q) + ", r = " +
                                   std::to_string(r)});
            pr = prp1;
        }
    }
    // Deligne bound at good primes
    for (long q : primes_up_to(n_max)) {
        if (f.level % q == 0) continue;
        Real bound = 2 * pow(Real::of(q, p), Real::of(f.weight - 1, p) / 2);
        Real mag = abs(f.ac(q, p));
        if (mag > bound * (1 + reltol))
            out.push_back({q, "deligne", "|a_p| exceeds 2 p^{(k-1)/2} at p = " + std::to_string(q)});
    }
    return out;
}

Newform load_form(const std::string& name, long n_max, const LmfdbOptions& opt) {
    Newform f;
    if (name == "delta" || name == "1.12.a.a") {
        f = Newform::from_eta(EtaQuotient{{{1, 24}}}, 12, 1, "1.12.a.a", n_max);
    } else if (name == "11.2.a.a" || name == "eta:11.2") {
        f = Newform::from_eta(EtaQuotient{{{1, 2}, {11, 2}}}, 2, 11, "11.2.a.a", n_max);
    } else if (name == "3.8.a.a" || name == "3.8.a") {
        f = Newform::from_qexp_generator("3.8.a.a", n_max);
    } else if (name == "13.2.e.a") {
        f = Newform::from_qexp_generator("13.2.e.a", n_max);
    } else if (name == "7.3.b.a" || name == "11.3.b.a") {
        long level = name[0] == '7' ? 7 : 11;
        DirichletCharacter chi(1);
        auto emb = make_weight3_embeddings(level, n_max, 192, &chi);
        f = Newform::from_embeddings(name, level, 3, chi, emb[0], 0, 192);
    } else {
        f = fetch_lmfdb(name, n_max, opt);
    }
    f.ensure(n_max);
    return f;
}

} // namespace rankin
