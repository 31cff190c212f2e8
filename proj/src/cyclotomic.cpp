#include "rankin/cyclotomic.hpp"

#include <stdexcept>

namespace rankin {

namespace {

using Poly = std::vector<mpq_class>;  // coefficient list, low to high

Poly poly_divide_exact(const Poly& num, const Poly& den) {
    Poly r = num;
    long dn = (long)num.size() - 1, dd = (long)den.size() - 1;
    if (dd < 0 || den[dd] == 0) throw std::logic_error("poly division by zero");
    Poly q(dn - dd + 1, mpq_class(0));
    for (long i = dn; i >= dd; --i) {
        mpq_class c = r[i] / den[dd];
        q[i - dd] = c;
        if (c != 0)
            for (long j = 0; j <= dd; ++j) r[i - dd + j] -= c * den[j];
    }
    for (auto& c : r)
        if (c != 0) throw std::logic_error("poly division not exact");
    return q;
}

} // namespace

std::vector<mpq_class> cyclotomic_polynomial(long m) {
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    Poly num(m + 1, mpq_class(0));
    num[0] = -1;
    num[m] = 1;
    for (long d : divisors(m)) {
        if (d == m) continue;
        num = poly_divide_exact(num, rankin::cyclotomic_polynomial(d));
    }
    return num;
}

CycloField::CycloField(long m) : m_(m) {
    if (m < 1) throw std::invalid_argument("CycloField: m >= 1 required");
    phi_ = rankin::cyclotomic_polynomial(m);
    deg_ = (long)phi_.size() - 1;
    // reduction table for x^deg .. x^{2deg-2}
    if (deg_ >= 1) {
        std::vector<mpq_class> cur(deg_, mpq_class(0));
        for (long j = 0; j < deg_; ++j) cur[j] = -phi_[j];  // x^deg mod phi (monic)
        pow_table_.push_back(cur);
        for (long i = 1; i <= deg_ - 2; ++i) {
            std::vector<mpq_class> nxt(deg_, mpq_class(0));
            mpq_class top = cur[deg_ - 1];
            for (long j = deg_ - 1; j >= 1; --j) nxt[j] = cur[j - 1];
            nxt[0] = 0;
            if (top != 0)
                for (long j = 0; j < deg_; ++j) nxt[j] += top * pow_table_[0][j];
            pow_table_.push_back(nxt);
            cur = nxt;
        }
    }
}

CycloField::Elem CycloField::from_rational(const mpq_class& q) const {
    Elem e(deg_, mpq_class(0));
    e[0] = q;
    e[0].canonicalize();
    return e;
}

CycloField::Elem CycloField::zeta_pow(long k) const {
    k = ((k % m_) + m_) % m_;
    if (deg_ == 1) {
        // m = 1 or 2
        Elem e = zero();
        e[0] = (m_ == 2 && k % 2 == 1) ? -1 : 1;
        return e;
    }
    if (k < deg_) {
        Elem e = zero();
        e[k] = 1;
        return e;
    }
    Elem acc = one();
    Elem x = zero();
    x[1] = 1;
    for (long i = 0; i < k; ++i) acc = mul(acc, x);
    return acc;
}

CycloField::Elem CycloField::from_root_of_unity(const RootOfUnity& r) const {
    if (r.zero) return zero();
    if (r.is_rational()) return from_rational(r.rational_value());
    mpq_class t = r.turn * m_;
    t.canonicalize();
    if (t.get_den() != 1)
        throw std::invalid_argument("root of unity not in this cyclotomic field");
    return zeta_pow(mpz_class(t.get_num()).get_si());
}

CycloField::Elem CycloField::add(const Elem& a, const Elem& b) const {
    Elem r(deg_);
    for (long i = 0; i < deg_; ++i) r[i] = a[i] + b[i];
    return r;
}

CycloField::Elem CycloField::sub(const Elem& a, const Elem& b) const {
    Elem r(deg_);
    for (long i = 0; i < deg_; ++i) r[i] = a[i] - b[i];
    return r;
}

CycloField::Elem CycloField::neg(const Elem& a) const {
    Elem r(deg_);
    for (long i = 0; i < deg_; ++i) r[i] = -a[i];
    return r;
}

CycloField::Elem CycloField::mul(const Elem& a, const Elem& b) const {
    std::vector<mpq_class> prod(2 * deg_ - 1, mpq_class(0));
    for (long i = 0; i < deg_; ++i) {
        if (a[i] == 0) continue;
        for (long j = 0; j < deg_; ++j) {
            if (b[j] == 0) continue;
            prod[i + j] += a[i] * b[j];
        }
    }
    Elem r(prod.begin(), prod.begin() + deg_);
    for (long i = deg_; i < (long)prod.size(); ++i) {
        if (prod[i] == 0) continue;
        const auto& red = pow_table_[i - deg_];
        for (long j = 0; j < deg_; ++j) r[j] += prod[i] * red[j];
    }
    return r;
}

CycloField::Elem CycloField::mul_scalar(const Elem& a, const mpq_class& q) const {
    Elem r(deg_);
    for (long i = 0; i < deg_; ++i) r[i] = a[i] * q;
    return r;
}

bool CycloField::is_zero(const Elem& a) const {
    for (const auto& c : a)
        if (c != 0) return false;
    return true;
}

bool CycloField::equal(const Elem& a, const Elem& b) const {
    for (long i = 0; i < deg_; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

std::optional<mpq_class> CycloField::as_rational(const Elem& a) const {
    for (long i = 1; i < deg_; ++i)
        if (a[i] != 0) return std::nullopt;
    return a[0];
}

CycloField::Elem CycloField::conj(const Elem& a) const {
    Elem r = mul_scalar(one(), a[0]);
    for (long i = 1; i < deg_; ++i) {
        if (a[i] == 0) continue;
        r = add(r, mul_scalar(zeta_pow(-i), a[i]));
    }
    return r;
}

CycloField::Elem CycloField::inverse(const Elem& a) const {
    if (is_zero(a)) throw std::domain_error("CycloField::inverse of zero");
    // extended Euclid over Q[x]: find s with s*a == const (mod phi)
    Poly r0 = phi_;
    Poly r1(a.begin(), a.end());
    while (!r1.empty() && r1.back() == 0) r1.pop_back();
    Poly s0{mpq_class(0)}, s1{mpq_class(1)};
    while ((long)r1.size() - 1 > 0) {
        long d1 = (long)r1.size() - 1;
        Poly q(std::max<long>((long)r0.size() - d1, 1), mpq_class(0));
        Poly r2 = r0;
        for (long i = (long)r2.size() - 1; i >= d1; --i) {
            if (r2[i] == 0) continue;
            mpq_class c = r2[i] / r1[d1];
            q[i - d1] = c;
            for (long j = 0; j <= d1; ++j) r2[i - d1 + j] -= c * r1[j];
        }
        while (!r2.empty() && r2.back() == 0) r2.pop_back();
        if (r2.empty()) throw std::logic_error("CycloField::inverse: unexpected zero remainder");
        Poly s2 = s0;
        s2.resize(std::max(s0.size(), q.size() + s1.size() - 1), mpq_class(0));
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        }
        while (!s2.empty() && s2.back() == 0) s2.pop_back();
        r0 = r1; r1 = r2; s0 = s1; s1 = s2;
    }
    mpq_class c = r1[0];
    // reduce s1/c mod phi into the power basis
    Elem acc = zero();
    Elem x = zero();
    if (deg_ > 1) x[1] = 1;
    Elem xp = one();
    for (size_t i = 0; i < s1.size(); ++i) {
        acc = add(acc, mul_scalar(xp, s1[i] / c));
        if (i + 1 < s1.size() && deg_ > 1) xp = mul(xp, x);
    }
    return acc;
}

Complex CycloField::embed(const Elem& a, Prec prec) const {
    Complex z = unit_root(mpq_class(1, m_), prec + 16);
    Complex acc(prec + 16);
    for (long i = deg_ - 1; i >= 0; --i) {
        acc = acc * z;
        acc += Complex(Real::of(a[i], prec + 16));
    }
    return Complex(acc.re.at_prec(prec), acc.im.at_prec(prec));
}

} // namespace rankin
