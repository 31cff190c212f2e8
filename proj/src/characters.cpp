#include "rankin/characters.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rankin {

long gcd_ll(long a, long b) { return std::gcd(a, b); }

long euler_phi(long n) {
    long r = n;
    for (auto [p, e] : factorize(n)) r -= r / p;
    return r;
}

std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> f;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.push_back({p, e});
        }
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

std::vector<long> divisors(long n) {
    std::vector<long> d;
    for (long i = 1; i * i <= n; ++i)
        if (n % i == 0) {
            d.push_back(i);
            if (i != n / i) d.push_back(n / i);
        }
    std::sort(d.begin(), d.end());
    return d;
}

long psi_index(long n) {
    long r = n;
    for (auto [p, e] : factorize(n)) r += r / p;
    return r;
}

static long pow_mod(long b, long e, long m) {
    long r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = (long)((__int128)r * b % m);
        b = (long)((__int128)b * b % m);
        e >>= 1;
    }
    return r;
}

// smallest primitive root mod p^a (odd p)
static long primitive_root(long p, int a) {
    long pk = 1;
    for (int i = 0; i < a; ++i) pk *= p;
    long phi_p = p - 1;
    auto fac = factorize(phi_p);
    long g = 2;
    for (;; ++g) {
        bool ok = true;
        for (auto [q, e] : fac)
            if (pow_mod(g, phi_p / q, p) == 1) { ok = false; break; }
        if (ok) break;
    }
    if (a == 1) return g;
    // lift: g works mod p^a unless g^{p-1} = 1 mod p^2
    if (pow_mod(g % (p * p), p - 1, p * p) == 1) g += p;
    return g % pk;
}

static mpq_class frac_mod1(mpq_class q) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    q -= mpq_class(fl);
    return q;
}

RootOfUnity RootOfUnity::of_turn(mpq_class t) {
    t.canonicalize();
    RootOfUnity r;
    r.zero = false;
    r.turn = frac_mod1(std::move(t));
    return r;
}

mpq_class RootOfUnity::rational_value() const {
    if (zero) return 0;
    if (turn == 0) return 1;
    if (turn == mpq_class(1, 2)) return -1;
    throw std::logic_error("RootOfUnity::rational_value: value not rational");
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
    if (zero || o.zero) return zero_value();
    return of_turn(turn + o.turn);
}

RootOfUnity RootOfUnity::conj() const {
    if (zero) return zero_value();
    return of_turn(-turn);
}

RootOfUnity RootOfUnity::pow(long e) const {
    if (zero) return zero_value();
    return of_turn(turn * e);
}

long RootOfUnity::order() const {
    if (zero) throw std::logic_error("RootOfUnity::order of zero");
    if (turn == 0) return 1;
    return mpz_class(turn.get_den()).get_si();
}

DirichletCharacter::DirichletCharacter(long modulus) {
    build(modulus, {});
}

DirichletCharacter::DirichletCharacter(long modulus, const std::vector<long>& exponents) {
    build(modulus, exponents);
}

void DirichletCharacter::build(long modulus, const std::vector<long>& exponents) {
    if (modulus < 1) throw std::invalid_argument("character modulus must be >= 1");
    modulus_ = modulus;
    comps_.clear();
    // CRT decomposition of (Z/N)^*
    for (auto [p, e] : factorize(modulus)) {
        long pk = 1;
        for (int i = 0; i < e; ++i) pk *= p;
        if (p == 2) {
            if (e == 1) continue;
            if (e == 2) {
                comps_.push_back({pk, 3, 2});  // <-1> = <3 mod 4>
            } else {
                comps_.push_back({pk, pk - 1, 2});            // <-1>
                comps_.push_back({pk, 5, pk / 4});            // <5>, order 2^{e-2}
            }
        } else {
            comps_.push_back({pk, primitive_root(p, e), euler_phi(pk)});
        }
    }
    exps_.assign(comps_.size(), 0);
    for (size_t i = 0; i < exponents.size() && i < exps_.size(); ++i) {
        long d = comps_[i].ord;
        exps_[i] = ((exponents[i] % d) + d) % d;
    }
    if (exponents.size() > comps_.size())
        throw std::invalid_argument("too many character exponents");

    // order = lcm of component value orders
    order_ = 1;
    for (size_t i = 0; i < comps_.size(); ++i) {
        long d = comps_[i].ord / gcd_ll(exps_[i], comps_[i].ord);
        order_ = std::lcm(order_, d);
    }

    // value table over residues mod N, filled by walking the full product of
    // the cyclic factors (generators lifted to mod N by CRT)
    table_den_ = order_;
    table_num_.assign(modulus_, -1);
    if (modulus_ == 1) {
        table_num_[0] = 0;
    } else {
        std::vector<long> lifted(comps_.size());
        for (size_t i = 0; i < comps_.size(); ++i) {
            const auto& c = comps_[i];
            long x = 0;
            for (long cand = 1; cand < 2 * modulus_; ++cand) {
                if (cand % c.pk != c.generator % c.pk) continue;
                bool ok = true;
                for (size_t j = 0; j < comps_.size(); ++j)
                    if (comps_[j].pk != c.pk && cand % comps_[j].pk != 1 % comps_[j].pk) { ok = false; break; }
                // sibling 2-power component must stay at its identity part:
                // the generator residues -1 and 5 each have trivial partner
                // component, so matching mod 2^e is already exact
                if (ok && gcd_ll(cand % modulus_, modulus_) == 1) { x = cand % modulus_; break; }
            }
            if (x == 0) throw std::logic_error("character build: generator lift not found");
            lifted[i] = x;
        }
        // enumerate exponent tuples
        std::vector<long> k(comps_.size(), 0);
        while (true) {
            long n = 1 % modulus_;
            mpq_class t = 0;
            for (size_t i = 0; i < comps_.size(); ++i) {
                n = (long)((__int128)n * pow_mod(lifted[i], k[i], modulus_) % modulus_);
                mpq_class step(exps_[i] * k[i], comps_[i].ord);
                step.canonicalize();
                t += step;
            }
            t = frac_mod1(t);
            mpq_class scaled = t * table_den_;
            if (scaled.get_den() != 1)
                throw std::logic_error("character value order exceeds character order");
            table_num_[n] = mpz_class(scaled.get_num()).get_si();
            size_t i = comps_.size();
            bool done = true;
            while (i > 0) {
                --i;
                if (++k[i] < comps_[i].ord) { done = false; break; }
                k[i] = 0;
            }
            if (done) break;
        }
        // every unit must now carry a value
        for (long n = 1; n < modulus_; ++n)
            if (gcd_ll(n, modulus_) == 1 && table_num_[n] < 0)
                throw std::logic_error("character build: unit not reached by generators");
    }

    // conductor: smallest f | N with chi trivial on units == 1 mod f
    conductor_ = modulus_;
    for (long f : divisors(modulus_)) {
        bool trivial_on_kernel = true;
        for (long n = 1; n < modulus_ && trivial_on_kernel; ++n) {
            if (gcd_ll(n, modulus_) != 1) continue;
            if (n % f == 1 % f && table_num_[n] != 0) trivial_on_kernel = false;
        }
        if (trivial_on_kernel) { conductor_ = f; break; }
    }
}

std::vector<long> DirichletCharacter::component_orders() const {
    std::vector<long> v;
    for (const auto& c : comps_) v.push_back(c.ord);
    return v;
}

RootOfUnity DirichletCharacter::operator()(long n) const {
    long r = n % modulus_;
    if (r < 0) r += modulus_;
    if (modulus_ == 1) return RootOfUnity::one();
    long num = table_num_[r];
    if (num < 0) return RootOfUnity::zero_value();
    mpq_class t(num, table_den_);
    t.canonicalize();
    return RootOfUnity::of_turn(t);
}

RootOfUnity DirichletCharacter::operator()(const mpz_class& n) const {
    mpz_class r = n % modulus_;
    if (r < 0) r += modulus_;
    return (*this)(r.get_si());
}

int DirichletCharacter::parity() const {
    RootOfUnity v = (*this)(modulus_ - 1 == 0 ? 1 : modulus_ - 1);
    if (modulus_ <= 2) return 1;
    return v.rational_value() == 1 ? 1 : -1;
}

std::vector<DirichletCharacter> DirichletCharacter::all(long modulus) {
    DirichletCharacter principal(modulus);
    std::vector<long> orders = principal.component_orders();
    std::vector<DirichletCharacter> out;
    std::vector<long> exps(orders.size(), 0);
    while (true) {
        out.emplace_back(modulus, exps);
        // lexicographic increment, last coordinate fastest
        size_t i = orders.size();
        while (i > 0) {
            --i;
            if (++exps[i] < orders[i]) break;
            exps[i] = 0;
            if (i == 0) return out;
        }
        if (orders.empty()) return out;
    }
}

DirichletCharacter DirichletCharacter::from_label(const std::string& label) {
    auto dot = label.find('.');
    if (dot == std::string::npos) throw std::invalid_argument("character label must be N.index");
    long N = std::stol(label.substr(0, dot));
    long idx = std::stol(label.substr(dot + 1));
    auto chars = all(N);
    if (idx < 1 || (size_t)idx > chars.size())
        throw std::invalid_argument("character index out of range for modulus " + std::to_string(N));
    return chars[idx - 1];
}

std::string DirichletCharacter::label() const {
    auto chars = all(modulus_);
    for (size_t i = 0; i < chars.size(); ++i)
        if (chars[i].exps_ == exps_) return std::to_string(modulus_) + "." + std::to_string(i + 1);
    throw std::logic_error("character not found in own enumeration");
}

DirichletCharacter DirichletCharacter::kronecker(long D, long modulus) {
    // match values of the Kronecker symbol on units mod `modulus`
    for (const auto& chi : all(modulus)) {
        bool ok = true;
        for (long n = 1; n < std::max(modulus, 2L) && ok; ++n) {
            if (gcd_ll(n, modulus) != 1) continue;
            long kr = mpz_kronecker_si(mpz_class(D).get_mpz_t(), n);
            RootOfUnity v = chi(n);
            if (v.zero || !v.is_rational() || v.rational_value() != kr) ok = false;
        }
        if (ok) return chi;
    }
    throw std::invalid_argument("no character mod " + std::to_string(modulus) +
                                " matches Kronecker symbol of " + std::to_string(D));
}

DirichletCharacter DirichletCharacter::conjugate() const {
    std::vector<long> e(exps_.size());
    for (size_t i = 0; i < exps_.size(); ++i) e[i] = (comps_[i].ord - exps_[i]) % comps_[i].ord;
    return {modulus_, e};
}

DirichletCharacter DirichletCharacter::power(long ee) const {
    std::vector<long> e(exps_.size());
    for (size_t i = 0; i < exps_.size(); ++i) {
        long d = comps_[i].ord;
        e[i] = (long)((((__int128)exps_[i] * ee) % d + d) % d);
    }
    return {modulus_, e};
}

DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
    long M = std::lcm(a.modulus_, b.modulus_);
    DirichletCharacter ai = a.induce(M), bi = b.induce(M);
    std::vector<long> e(ai.exps_.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = (ai.exps_[i] + bi.exps_[i]) % ai.comps_[i].ord;
    return {M, e};
}

DirichletCharacter DirichletCharacter::primitivize() const {
    return induce(conductor_);
}

DirichletCharacter DirichletCharacter::induce(long M) const {
    if (M % conductor_ != 0)
        throw std::invalid_argument("cannot induce: conductor does not divide target modulus");
    if (M == modulus_) return *this;
    // find the character mod M agreeing with this one on units joint to both moduli:
    // evaluate at M's generators by lifting to residues coprime to lcm
    DirichletCharacter shell(M);
    long L = std::lcm(M, modulus_);
    std::vector<long> e(shell.comps_.size());
    for (size_t i = 0; i < shell.comps_.size(); ++i) {
        const auto& c = shell.comps_[i];
        // CRT-lift: x == generator mod c.pk (this also pins the sibling
        // component at the same prime, since the generator residue has
        // trivial sibling part), x == 1 mod every other prime power
        long x = 0;
        for (long cand = 1; cand < std::max(L, 2L); ++cand) {
            if (cand % c.pk != c.generator % c.pk) continue;
            bool one_elsewhere = true;
            for (size_t j = 0; j < shell.comps_.size(); ++j)
                if (shell.comps_[j].pk != c.pk && cand % shell.comps_[j].pk != 1 % shell.comps_[j].pk) {
                    one_elsewhere = false;
                    break;
                }
            if (!one_elsewhere) continue;
            if (gcd_ll(cand, L) != 1) continue;
            x = cand;
            break;
        }
        if (x == 0 && M > 1) throw std::logic_error("induce: CRT lift not found");
        RootOfUnity v = (*this)(x % modulus_ == 0 ? modulus_ : x);
        if (v.zero) throw std::logic_error("induce: value zero at lifted unit");
        // v.turn = e_i / ord_i
        mpq_class t = v.turn * c.ord;
        if (t.get_den() != 1) throw std::logic_error("induce: exponent not integral");
        e[i] = mpz_class(t.get_num()).get_si() % c.ord;
    }
    DirichletCharacter out(M, e);
    return out;
}

nlohmann::ordered_json DirichletCharacter::to_json() const {
    nlohmann::ordered_json j;
    j["modulus"] = modulus_;
    j["conductor"] = conductor_;
    j["exponents"] = exps_;
    j["label"] = label();
    return j;
}

DirichletCharacter DirichletCharacter::from_json(const nlohmann::json& j) {
    DirichletCharacter chi(j.at("modulus").get<long>(), j.at("exponents").get<std::vector<long>>());
    if (j.contains("conductor") && j["conductor"].get<long>() != chi.conductor())
        throw std::runtime_error("character JSON conductor mismatch");
    return chi;
}

Complex DirichletCharacter::gauss_sum(Prec prec) const {
    DirichletCharacter chi = primitivize();
    long Nc = chi.modulus();
    Complex g(prec);
    for (long u = 1; u <= Nc; ++u) {
        RootOfUnity v = chi(u);
        if (v.zero) continue;
        mpq_class shift(u, Nc);
        shift.canonicalize();
        g += RootOfUnity::of_turn(v.turn + shift).to_complex(prec);
    }
    if (Nc == 1) g = Complex::of(1, 0, prec);
    return g;
}

Complex DirichletCharacter::gauss_product_check(Prec prec) const {
    Complex g = gauss_sum(prec);
    Complex gbar = conjugate().gauss_sum(prec);
    Real target = Real::of(parity() * conductor_, prec);
    return g * gbar - Complex(target);
}

} // namespace rankin
