#pragma once

// Dirichlet characters mod N with exact root-of-unity values.
//
// (Z/N)^* is decomposed into cyclic factors via CRT: one factor per odd
// prime power p^a (generator = a primitive root), and for 2^e: nothing
// (e<=1), <-1> (e=2), or <-1> x <5> (e>=3).  A character is an exponent
// vector against these generators; values are exact fractions of a turn.

#include "rankin/complexnum.hpp"

#include <gmpxx.h>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vendor_json_fwd.hpp"

namespace rankin {

// exp(2*pi*i * turn), or exactly zero.
struct RootOfUnity {
    bool zero = true;
    mpq_class turn;  // canonical representative in [0,1)

    static RootOfUnity zero_value() { return {}; }
    static RootOfUnity one() { return of_turn(0); }
    static RootOfUnity of_turn(mpq_class t);

    bool is_one() const { return !zero && turn == 0; }
    // nonzero value lies in Q  <=>  turn in {0, 1/2}
    bool is_rational() const { return zero || turn == 0 || turn == mpq_class(1, 2); }
    mpq_class rational_value() const;  // requires is_rational()
    RootOfUnity operator*(const RootOfUnity& o) const;
    RootOfUnity conj() const;
    RootOfUnity pow(long e) const;
    bool operator==(const RootOfUnity& o) const { return zero == o.zero && (zero || turn == o.turn); }
    Complex to_complex(Prec prec) const {
        if (zero) return Complex(prec);
        return unit_root(turn, prec);
    }
    long order() const;  // multiplicative order (requires nonzero)
};

class DirichletCharacter {
public:
    // principal character mod N
    explicit DirichletCharacter(long modulus);
    DirichletCharacter(long modulus, const std::vector<long>& exponents);

    static std::vector<DirichletCharacter> all(long modulus);
    static DirichletCharacter from_label(const std::string& label);  // "N.index", 1-based index
    // the character mod N given by the Kronecker symbol (D/.) with |D| | N-compatible modulus
    static DirichletCharacter kronecker(long D, long modulus);

    long modulus() const { return modulus_; }
    long conductor() const { return conductor_; }
    long order() const { return order_; }
    bool is_principal() const { return order_ == 1; }
    bool is_primitive() const { return conductor_ == modulus_; }
    int parity() const;  // chi(-1) as +-1
    const std::vector<long>& exponents() const { return exps_; }
    std::vector<long> component_orders() const;

    RootOfUnity operator()(long n) const;
    RootOfUnity operator()(const mpz_class& n) const;
    Complex value_c(long n, Prec prec) const { return (*this)(n).to_complex(prec); }
    // true if every value lies in Q (order <= 2)
    bool is_rational() const { return order_ <= 2; }

    DirichletCharacter conjugate() const;
    DirichletCharacter power(long e) const;
    friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b);
    // the primitive character inducing this one (modulus = conductor)
    DirichletCharacter primitivize() const;
    // extend/induce to modulus M (requires conductor | M)
    DirichletCharacter induce(long M) const;

    std::string label() const;  // "N.index"
    nlohmann::ordered_json to_json() const;
    static DirichletCharacter from_json(const nlohmann::json& j);

    bool operator==(const DirichletCharacter& o) const {
        return modulus_ == o.modulus_ && exps_ == o.exps_;
    }

    // Gauss sum G(chi) = sum_{u mod N_chi} chi'(u) e(u/N_chi), chi' primitive.
    Complex gauss_sum(Prec prec) const;
    // G(chi)G(chibar) - chi(-1) N_chi for primitive chi (contract: ~ 0)
    Complex gauss_product_check(Prec prec) const;

private:
    struct Component {
        long pk;         // prime power (or 4 / 2^e pieces)
        long generator;  // generator of the cyclic piece, as residue mod modulus component
        long ord;        // order of the cyclic piece
    };

    void build(long modulus, const std::vector<long>& exponents);

    long modulus_ = 1;
    long conductor_ = 1;
    long order_ = 1;
    std::vector<Component> comps_;
    std::vector<long> exps_;
    // value table: turn numerator over lcm_den_ per residue, -1 == value 0
    std::vector<long> table_num_;
    long table_den_ = 1;
};

long euler_phi(long n);
long gcd_ll(long a, long b);
std::vector<long> divisors(long n);
std::vector<std::pair<long, int>> factorize(long n);
// N * prod_{p|N} (1 + 1/p)
long psi_index(long n);

} // namespace rankin
