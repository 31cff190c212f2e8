#include "rankin/divisor.hpp"
#include "rankin/cyclotomic.hpp"

#include <numeric>

namespace rankin {

const CycloField& cyclo_field(long m);

Complex DivisorValue::to_complex(Prec prec) const {
    if (coeff == 0) return Complex(prec);
    return unit_root(turn, prec) * Real::of(coeff, prec);
}

void DivisorValue::canonicalize() {
    coeff.canonicalize();
    if (coeff == 0) { turn = 0; return; }
    // reduce turn into [0,1); fold half turns into the sign
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), turn.get_num_mpz_t(), turn.get_den_mpz_t());
    turn -= mpq_class(fl);
    turn.canonicalize();
    if (turn == mpq_class(1, 2)) {
        coeff = -coeff;
        turn = 0;
    }
}

DivisorValue DivisorValue::scaled(const mpq_class& c) const {
    DivisorValue r{coeff * c, turn};
    r.canonicalize();
    return r;
}

DivisorValue DivisorValue::plus(const DivisorValue& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (turn != o.turn)
        throw std::invalid_argument("DivisorValue::plus: incompatible root-of-unity parts");
    DivisorValue r{coeff + o.coeff, turn};
    r.canonicalize();
    return r;
}

void Divisor::set(long v1, long v2, DivisorValue val) {
    val.canonicalize();
    long a = ((v1 % N_) + N_) % N_, b = ((v2 % N_) + N_) % N_;
    if (val.is_zero())
        vals_.erase({a, b});
    else
        vals_[{a, b}] = val;
}

void Divisor::set_rational(long v1, long v2, const mpq_class& c) {
    set(v1, v2, DivisorValue{c, 0});
}

DivisorValue Divisor::at(long v1, long v2) const {
    long a = ((v1 % N_) + N_) % N_, b = ((v2 % N_) + N_) % N_;
    auto it = vals_.find({a, b});
    if (it == vals_.end()) return {};
    return it->second;
}

bool Divisor::is_degree_zero() const {
    long m = 1;
    for (const auto& [k, v] : vals_) m = std::lcm(m, (long)mpz_class(v.turn.get_den()).get_si());
    const CycloField& F = cyclo_field(m);
    CycloField::Elem sum = F.zero();
    for (const auto& [k, v] : vals_) {
        mpq_class t = v.turn * m;
        t.canonicalize();
        sum = F.add(sum, F.mul_scalar(F.zeta_pow(mpz_class(t.get_num()).get_si()), v.coeff));
    }
    return F.is_zero(sum);
}

Divisor Divisor::scaled(const mpq_class& c) const {
    Divisor r(N_);
    for (const auto& [k, v] : vals_) r.set(k.first, k.second, v.scaled(c));
    return r;
}

Divisor Divisor::plus(const Divisor& o) const {
    if (o.modulus() != N_) throw std::invalid_argument("Divisor::plus: modulus mismatch");
    Divisor r = *this;
    for (const auto& [k, v] : o.support()) r.set(k.first, k.second, r.at(k.first, k.second).plus(v));
    return r;
}

Divisor beta_chi(const DirichletCharacter& chi) {
    if (chi.is_principal()) throw TrivialCharacter("beta_chi requires a nontrivial character");
    long N = chi.modulus();
    Divisor b(N);
    DirichletCharacter chibar = chi.conjugate();
    for (long v2 = 0; v2 < N; ++v2) {
        RootOfUnity val = chibar(N - v2);
        if (val.zero) continue;
        DivisorValue dv{1, val.turn};
        b.set(0, v2, dv);
    }
    return b;
}

} // namespace rankin
