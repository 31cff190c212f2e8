#include <catch2/catch_amalgamated.hpp>

#include "rankin/qexp.hpp"
#include "rankin/bernoulli.hpp"

using namespace rankin;

namespace rankin { const CycloField& cyclo_field(long m); }

TEST_CASE("eta quotient basics") {
    EtaQuotient delta{{{1, 24}}};
    CHECK(delta.weight() == 12);
    CHECK(delta.valuation() == 1);
    auto c = eta_expand(delta, 10);
    CHECK(c[0] == 1);   // a_1
    CHECK(c[1] == -24);
    CHECK(c[2] == 252);
    CHECK(c[3] == -1472);
    CHECK(c[5] == -6048);
    CHECK(c[5] == c[1] * c[2]);  // tau(6) = tau(2) tau(3)

    // the spec's weight-8 level-3 quotient has q-valuation 4/3: rejected
    EtaQuotient bad{{{1, 8}, {3, 8}}};
    CHECK(bad.valuation() == mpq_class(4, 3));
    CHECK_THROWS_AS(eta_expand(bad, 5), NotHolomorphic);

    // negative exponents: 1/eta has valuation -1/24: rejected
    EtaQuotient inv{{{1, -1}}};
    CHECK_THROWS_AS(eta_expand(inv, 5), NotHolomorphic);

    // a_1 = 1 always
    EtaQuotient lvl11{{{1, 2}, {11, 2}}};
    CHECK(eta_expand(lvl11, 1)[0] == 1);
}

TEST_CASE("level 11 weight 2: eisenstein-product eigenform equals eta quotient") {
    long n = 200;
    auto f = make_newform_11_2_a(n);
    EtaQuotient lvl11{{{1, 2}, {11, 2}}};
    auto e = eta_expand(lvl11, n);
    const CycloField& F = *f.F;
    for (long i = 1; i <= n; ++i) {
        auto r = F.as_rational(f.a(i));
        REQUIRE(r.has_value());
        CHECK(*r == mpq_class(e[i - 1]));
    }
    // known values
    CHECK(*F.as_rational(f.a(2)) == -2);
    CHECK(*F.as_rational(f.a(3)) == -1);
    CHECK(*F.as_rational(f.a(11)) == 1);
}

TEST_CASE("weight 8 level 3 newform has a_3 = -27") {
    long n = 64;
    auto f = make_newform_3_8_a(n);
    const CycloField& F = *f.F;
    CHECK(*F.as_rational(f.a(1)) == 1);
    CHECK(*F.as_rational(f.a(3)) == -27);
    // multiplicativity
    CHECK(*F.as_rational(f.a(6)) == *F.as_rational(f.a(2)) * *F.as_rational(f.a(3)));
    // Deligne at p = 2,5,7 (|a_p| <= 2 p^{7/2})
    for (long p : {2L, 5L, 7L}) {
        double ap = F.as_rational(f.a(p))->get_d();
        CHECK(std::abs(ap) <= 2 * std::pow((double)p, 3.5) + 1e-9);
    }
    // p-power recurrence at p=2 up to 2^6: a_{2^{r+1}} = a_2 a_{2^r} - 2^7 a_{2^{r-1}}
    for (long r = 1; r <= 5; ++r) {
        mpq_class lhs = *F.as_rational(f.a(1L << (r + 1)));
        mpq_class rhs = *F.as_rational(f.a(2)) * *F.as_rational(f.a(1L << r)) -
                        mpq_class(128) * *F.as_rational(f.a(1L << (r - 1)));
        CHECK(lhs == rhs);
    }
    // a_9 = a_3^2 (3 || level: U_3 eigenvalue powers)
    CHECK(*F.as_rational(f.a(9)) == mpq_class(729));
}

TEST_CASE("weight 2 level 13 sextic-nebentypus newform") {
    long n = 240;
    auto f = make_newform_13_2_e(n);
    const CycloField& F = *f.F;  // Q(zeta_12)
    REQUIRE(F.conductor() == 12);
    CHECK(F.equal(f.a(1), F.one()));
    // chi checks
    CHECK(f.neben.order() == 6);
    CHECK(f.neben.parity() == 1);
    // coefficients lie in the zeta_6 subfield: coords 1 and 3 vanish
    for (long i = 1; i <= n; ++i) {
        CHECK(f.a(i)[1] == 0);
        CHECK(f.a(i)[3] == 0);
    }
    // multiplicativity on coprime pairs
    for (auto [m, k] : std::vector<std::pair<long, long>>{{2, 3}, {3, 5}, {4, 5}, {6, 7}, {11, 13}}) {
        CHECK(F.equal(f.a(m * k), F.mul(f.a(m), f.a(k))));
    }
    // Hecke recurrence at p=2: a_4 = a_2^2 - chi(2)*2
    auto chi2 = F.from_root_of_unity(f.neben(2));
    auto rhs = F.sub(F.mul(f.a(2), f.a(2)), F.mul_scalar(chi2, 2));
    CHECK(F.equal(f.a(4), rhs));
    // Deligne |a_p| <= 2 sqrt(p) numerically
    Prec p = 128;
    for (long q : {2L, 3L, 5L, 7L, 11L, 17L}) {
        double ap = abs(F.embed(f.a(q), p)).to_double();
        CHECK(ap <= 2 * std::sqrt((double)q) + 1e-20);
    }
    // |a_13|^2 = 13 (ramified principal series, conductor of chi = level)
    Real a13n = norm2(F.embed(f.a(13), p));
    CHECK(abs(a13n - Real::of(13L, p)).to_double() < 1e-30);
}

TEST_CASE("weight 3 quadratic-nebentypus spaces") {
    Prec p = 128;
    DirichletCharacter chi7(1);
    auto emb7 = make_weight3_embeddings(7, 64, p, &chi7);
    REQUIRE(emb7.size() >= 1);
    CHECK(chi7.parity() == -1);
    const auto& a = emb7[0];
    CHECK(abs(a[1] - Complex::of(1, 0, p)).to_double() < 1e-30);
    CHECK(abs(a[6] - a[2] * a[3]).to_double() < 1e-25);
    for (long q : {2L, 3L, 5L, 11L}) {
        CHECK(abs(a[q]).to_double() <= 2.0 * (double)q + 1e-9);
    }
    // CM by Q(sqrt(-7)): a_p = 0 when chi(p) = -1
    for (long q : {3L, 5L, 13L, 17L}) {
        if (chi7(q).rational_value() == -1) CHECK(abs(a[q]).to_double() < 1e-25);
    }

    DirichletCharacter chi11(1);
    auto emb11 = make_weight3_embeddings(11, 40, p, &chi11);
    REQUIRE(emb11.size() >= 1);
    if (emb11.size() == 2)
        CHECK(abs(emb11[0][2] - conj(emb11[1][2])).to_double() < 1e-25);
    for (const auto& an : emb11) {
        CHECK(abs(an[1] - Complex::of(1, 0, p)).to_double() < 1e-30);
        CHECK(abs(an[6] - an[2] * an[3]).to_double() < 1e-25);
        CHECK(abs(an[10] - an[2] * an[5]).to_double() < 1e-25);
        for (long q : {2L, 3L, 5L, 7L})
            CHECK(abs(an[q]).to_double() <= 2.0 * (double)q + 1e-9);
    }
}

TEST_CASE("eisenstein q-expansions are modular (numeric slash check)") {
    // E_2^{1,chi} for chi mod 13 sextic, under gamma = [[1,0],[13,1]]:
    // E(g tau) = chi(d) (c tau + d)^2 E(tau)
    Prec p = 192;
    const CycloField& F = cyclo_field(12);
    DirichletCharacter chi(13, {2});
    long L = 9000;
    QSeries e2 = eisenstein_qexp(2, DirichletCharacter(1), chi, L, F);
    auto eval = [&](const Complex& tau) {
        Complex twopii(Real(p), Real::pi(p) * 2);
        Complex q = exp(twopii * tau);
        Complex acc(p), qp = Complex::of(1, 0, p);
        for (long n = 0; n <= L; ++n) {
            if (n) qp = qp * q;
            auto e = e2.value(n);
            if (F.is_zero(e)) continue;
            acc += F.embed(e, p) * qp;
        }
        return acc;
    };
    Complex tau = Complex(Real::of(mpq_class(-1, 13), p), Real::of(mpq_class(1, 8), p));
    Complex ctd = Complex::of(13, 0, p) * tau + Complex::of(1, 0, p);
    Complex gtau = tau / ctd;  // [[1,0],[13,1]] tau
    Complex lhs = eval(gtau);
    Complex rhs = pow(ctd, 2L) * eval(tau);  // chi(d) = chi(1) = 1
    CHECK(abs(lhs - rhs).to_double() / abs(rhs).to_double() < 1e-22);
}
