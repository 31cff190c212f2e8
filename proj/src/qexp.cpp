#include "rankin/qexp.hpp"
#include "rankin/bernoulli.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace rankin {

// ---- shared field registry ---------------------------------------------------

const CycloField& cyclo_field(long m) {
    static std::map<long, CycloField> reg;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = reg.find(m);
    if (it == reg.end()) it = reg.emplace(m, CycloField(m)).first;
    return it->second;
}

std::vector<long> primes_up_to(long n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<long> ps;
    for (long i = 2; i <= n; ++i) {
        if (!comp[i]) {
            ps.push_back(i);
            for (long j = 2 * i; j <= n; j += i) comp[j] = true;
        }
    }
    return ps;
}

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

// ---- eta quotients -----------------------------------------------------------

mpq_class EtaQuotient::weight() const {
    mpq_class w = 0;
    for (auto [d, r] : terms) w += mpq_class(r, 2);
    w.canonicalize();
    return w;
}

mpq_class EtaQuotient::valuation() const {
    mpq_class v = 0;
    for (auto [d, r] : terms) v += mpq_class(d * r, 24);
    v.canonicalize();
    return v;
}

std::vector<mpz_class> eta_expand(const EtaQuotient& q, long n_max) {
    if (n_max < 1) throw std::invalid_argument("eta_expand: n_max >= 1");
    mpq_class val = q.valuation();
    if (val.get_den() != 1 || val <= 0)
        throw NotHolomorphic("eta quotient q-valuation " + val.get_str() + " is not a positive integer");
    long L = n_max;  // coefficients of the product Prod (1-q^{dn})^{r_d} up to q^{L-1}
    std::vector<mpz_class> c(L, 0);
    c[0] = 1;
    for (auto [d, r] : q.terms) {
        if (d < 1) throw std::invalid_argument("eta_expand: divisor must be >= 1");
        long reps = std::abs(r);
        for (long t = 0; t < reps; ++t) {
            if (r > 0) {
                // multiply by prod_n (1 - q^{dn})
                for (long n = 1; (long)n * d < L; ++n) {
                    long m = n * d;
                    for (long i = L - 1; i >= m; --i) c[i] -= c[i - m];
                }
            } else {
                // divide by (1 - q^{dn}): geometric series per n
                for (long n = 1; (long)n * d < L; ++n) {
                    long m = n * d;
                    for (long i = m; i < L; ++i) c[i] += c[i - m];
                }
            }
        }
    }
    return c;  // a_k = c[k-1] after the q^val shift
}

// ---- QSeries ------------------------------------------------------------------

namespace {

// integer-coordinate cyclotomic arithmetic with a reduction table
struct ZCyclo {
    long deg;
    std::vector<std::vector<mpz_class>> red;  // x^{deg+i} reduced

    explicit ZCyclo(const CycloField& F) : deg(F.degree()) {
        auto phi = F.cyclotomic_polynomial();
        if (deg >= 1) {
            std::vector<mpz_class> cur(deg);
            for (long j = 0; j < deg; ++j) {
                mpq_class c = -phi[j];
                c.canonicalize();
                if (c.get_den() != 1) throw std::logic_error("cyclotomic polynomial not integral");
                cur[j] = c.get_num();
            }
            red.push_back(cur);
            for (long i = 1; i <= deg - 2; ++i) {
                std::vector<mpz_class> nxt(deg);
                mpz_class top = cur[deg - 1];
                for (long j = deg - 1; j >= 1; --j) nxt[j] = cur[j - 1];
                nxt[0] = 0;
                if (top != 0)
                    for (long j = 0; j < deg; ++j) nxt[j] += top * red[0][j];
                red.push_back(nxt);
                cur = nxt;
            }
        }
    }

    void addmul(std::vector<mpz_class>& acc, const std::vector<mpz_class>& a,
                const std::vector<mpz_class>& b, std::vector<mpz_class>& scratch) const {
        // scratch has size 2*deg-1
        for (auto& s : scratch) s = 0;
        for (long i = 0; i < deg; ++i) {
            if (a[i] == 0) continue;
            for (long j = 0; j < deg; ++j) {
                if (b[j] == 0) continue;
                scratch[i + j] += a[i] * b[j];
            }
        }
        for (long i = 0; i < deg; ++i) acc[i] += scratch[i];
        for (long i = deg; i < 2 * deg - 1; ++i) {
            if (scratch[i] == 0) continue;
            for (long j = 0; j < deg; ++j) acc[j] += scratch[i] * red[i - deg][j];
        }
    }
};

const ZCyclo& zcyclo_for(const CycloField& F) {
    static std::map<const CycloField*, ZCyclo> reg;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = reg.find(&F);
    if (it == reg.end()) it = reg.emplace(&F, ZCyclo(F)).first;
    return it->second;
}

std::vector<mpz_class> zelem_from(const CycloField& F, const CycloField::Elem& e, mpz_class& den_out) {
    // write e = (1/den) * integer vector
    mpz_class den = 1;
    for (const auto& c : e) den = lcm(den, mpz_class(c.get_den()));
    std::vector<mpz_class> z(e.size());
    for (size_t i = 0; i < e.size(); ++i) {
        mpq_class scaled = e[i] * mpq_class(den);
        scaled.canonicalize();
        z[i] = scaled.get_num();
    }
    den_out = den;
    return z;
}

} // namespace

CycloField::Elem QSeries::value(long n) const {
    CycloField::Elem e = F->zero();
    if (n < 0 || n >= length()) return e;
    for (long i = 0; i < F->degree(); ++i) {
        e[i] = mpq_class(c[n][i]) / mpq_class(den);
        e[i].canonicalize();
    }
    return e;
}

QSeries qs_zero(const CycloField& F, long len) {
    QSeries s;
    s.F = &F;
    s.den = 1;
    s.c.assign(len, std::vector<mpz_class>(F.degree(), mpz_class(0)));
    return s;
}

QSeries qs_add(const QSeries& a, const QSeries& b) {
    QSeries r = qs_zero(*a.F, std::min(a.length(), b.length()));
    r.den = lcm(a.den, b.den);
    mpz_class fa = r.den / a.den, fb = r.den / b.den;
    for (long n = 0; n < r.length(); ++n)
        for (long i = 0; i < a.F->degree(); ++i) r.c[n][i] = fa * a.c[n][i] + fb * b.c[n][i];
    return r;
}

QSeries qs_mul(const QSeries& a, const QSeries& b) {
    const CycloField& F = *a.F;
    const ZCyclo& Z = zcyclo_for(F);
    long L = std::min(a.length(), b.length());
    QSeries r = qs_zero(F, L);
    r.den = a.den * b.den;
    std::vector<mpz_class> scratch(2 * F.degree() - 1 > 0 ? 2 * F.degree() - 1 : 1);
    for (long i = 0; i < L; ++i) {
        bool zi = true;
        for (const auto& x : a.c[i])
            if (x != 0) { zi = false; break; }
        if (zi) continue;
        for (long j = 0; i + j < L; ++j) Z.addmul(r.c[i + j], a.c[i], b.c[j], scratch);
    }
    return r;
}

QSeries qs_scale(const QSeries& a, const mpq_class& q) {
    QSeries r = a;
    mpq_class qq = q;
    qq.canonicalize();
    r.den = a.den * qq.get_den();
    mpz_class num = qq.get_num();
    for (auto& row : r.c)
        for (auto& x : row) x *= num;
    return r;
}

QSeries qs_rescale_tau(const QSeries& a, long d) {
    QSeries r = qs_zero(*a.F, a.length());
    r.den = a.den;
    for (long n = 0; n * d < a.length(); ++n) r.c[n * d] = a.c[n];
    return r;
}

QSeries qs_pow(const QSeries& a, long e) {
    QSeries r = qs_zero(*a.F, a.length());
    r.den = 1;
    r.c[0][0] = 1;
    for (long i = 0; i < e; ++i) r = qs_mul(r, a);
    return r;
}

QSeries eisenstein_qexp(long k, const DirichletCharacter& psi, const DirichletCharacter& phi,
                        long n_max, const CycloField& F) {
    QSeries s = qs_zero(F, n_max + 1);
    // constant term
    CycloField::Elem c0 = F.zero();
    if (psi.modulus() == 1) {
        // -B_{k,phi}/(2k) as a field element
        long v = phi.modulus();
        CycloField::Elem b = F.zero();
        for (long aa = 1; aa <= v; ++aa) {
            RootOfUnity x = phi(aa);
            if (x.zero) continue;
            b = F.add(b, F.mul_scalar(F.from_root_of_unity(x), bernoulli_polynomial((unsigned)k, mpq_class(aa, v))));
        }
        mpq_class scale{mpz_class(v)};
        mpq_class fac = 1;
        for (long i = 1; i < k; ++i) fac *= scale;
        b = F.mul_scalar(b, fac);              // B_{k,phi}
        c0 = F.mul_scalar(b, mpq_class(-1, 2 * k));
    }
    mpz_class den;
    auto z0 = zelem_from(F, c0, den);
    s.den = den;
    s.c[0] = z0;
    // a_n = den * sum_{d|n} psi(n/d) phi(d) d^{k-1}
    const ZCyclo& Z = zcyclo_for(F);
    (void)Z;
    for (long n = 1; n <= n_max; ++n) {
        CycloField::Elem acc = F.zero();
        for (long d = 1; d * d <= n; ++d) {
            if (n % d != 0) continue;
            long pair[2] = {d, n / d};
            int cnt = (d == n / d) ? 1 : 2;
            for (int t = 0; t < cnt; ++t) {
                long dv = pair[t];
                RootOfUnity vp = psi(n / dv), vf = phi(dv);
                if (vp.zero || vf.zero) continue;
                mpz_class dk = 1;
                for (long i = 1; i < k; ++i) dk *= dv;
                acc = F.add(acc, F.mul_scalar(F.from_root_of_unity(vp * vf), mpq_class(dk)));
            }
        }
        // acc is integral
        for (long i = 0; i < F.degree(); ++i) {
            mpq_class scaled = acc[i] * mpq_class(s.den);
            scaled.canonicalize();
            if (scaled.get_den() != 1) throw std::logic_error("eisenstein coefficient denominator leak");
            s.c[n][i] = scaled.get_num();
        }
    }
    return s;
}

QSeries eisenstein2_level(long N, long n_max, const CycloField& F) {
    QSeries s = qs_zero(F, n_max + 1);
    s.den = 24;
    s.c[0][0] = N - 1;
    for (long n = 1; n <= n_max; ++n) {
        long s1 = 0, s1N = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) s1 += d;
        if (n % N == 0)
            for (long d = 1; d <= n / N; ++d)
                if ((n / N) % d == 0) s1N += d;
        s.c[n][0] = mpz_class(24) * (s1 - N * s1N);
    }
    return s;
}

QSeries hecke_tp(const QSeries& f, long p, long k, const DirichletCharacter& chi) {
    const CycloField& F = *f.F;
    long Lout = (f.length() - 1) / p + 1;
    QSeries r = qs_zero(F, Lout);
    r.den = f.den;
    // chi(p) p^{k-1} as integer-coordinate field element
    RootOfUnity cp = chi(p);
    mpz_class pk = 1;
    for (long i = 1; i < k; ++i) pk *= p;
    std::vector<mpz_class> twist(F.degree(), mpz_class(0));
    bool has_twist = !cp.zero;
    if (has_twist) {
        auto e = F.from_root_of_unity(cp);
        for (long i = 0; i < F.degree(); ++i) {
            mpq_class c = e[i];
            c.canonicalize();
            if (c.get_den() != 1) throw std::logic_error("zeta power not integral");
            twist[i] = c.get_num() * pk;
        }
    }
    const ZCyclo& Z = zcyclo_for(F);
    std::vector<mpz_class> scratch(2 * F.degree() - 1 > 0 ? 2 * F.degree() - 1 : 1);
    for (long n = 0; n < Lout; ++n) {
        r.c[n] = f.c[n * p];
        if (has_twist && (n == 0 || n % p == 0)) {
            long idx = (n == 0) ? 0 : n / p;
            Z.addmul(r.c[n], twist, f.c[idx], scratch);
        }
    }
    return r;
}

// ---- eigenform extraction ------------------------------------------------------

namespace {

using Elem = CycloField::Elem;

// Gaussian elimination solve A x = y over the field; A given row-major.
std::vector<Elem> solve_linear(const CycloField& F, std::vector<std::vector<Elem>> A,
                               std::vector<std::vector<Elem>> Y) {
    // returns X with one column per column of Y; A must have full column rank
    size_t rows = A.size(), cols = A[0].size(), ycols = Y[0].size();
    std::vector<size_t> pivot_of_col(cols, SIZE_MAX);
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t pr = SIZE_MAX;
        for (size_t r = rank; r < rows; ++r)
            if (!F.is_zero(A[r][c])) { pr = r; break; }
        if (pr == SIZE_MAX) continue;
        std::swap(A[pr], A[rank]);
        std::swap(Y[pr], Y[rank]);
        Elem inv = F.inverse(A[rank][c]);
        for (size_t cc = 0; cc < cols; ++cc) A[rank][cc] = F.mul(A[rank][cc], inv);
        for (size_t yc = 0; yc < ycols; ++yc) Y[rank][yc] = F.mul(Y[rank][yc], inv);
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || F.is_zero(A[r][c])) continue;
            Elem f = A[r][c];
            for (size_t cc = 0; cc < cols; ++cc) A[r][cc] = F.sub(A[r][cc], F.mul(f, A[rank][cc]));
            for (size_t yc = 0; yc < ycols; ++yc) Y[r][yc] = F.sub(Y[r][yc], F.mul(f, Y[rank][yc]));
        }
        pivot_of_col[c] = rank;
        ++rank;
    }
    if (rank < cols) throw std::logic_error("solve_linear: basis not of full rank");
    // consistency of extra rows
    for (size_t r = rank; r < rows; ++r)
        for (size_t yc = 0; yc < ycols; ++yc)
            if (!F.is_zero(Y[r][yc]))
                throw std::logic_error("solve_linear: inconsistent system (basis not closed under T_p?)");
    std::vector<Elem> X(cols * ycols, F.zero());
    for (size_t c = 0; c < cols; ++c)
        for (size_t yc = 0; yc < ycols; ++yc) X[c * ycols + yc] = Y[pivot_of_col[c]][yc];
    return X;
}

// greedy maximal linearly independent subset, judged on a coefficient prefix
static std::vector<QSeries> select_independent(const std::vector<QSeries>& cand) {
    const CycloField& F = *cand[0].F;
    long L0 = (long)(4 * cand.size() + 10);
    std::vector<std::vector<Elem>> rows;  // reduced row echelon rows over prefix
    std::vector<QSeries> keep;
    for (const auto& s : cand) {
        std::vector<Elem> v(L0 + 1, F.zero());
        for (long n = 0; n <= L0; ++n) v[n] = s.value(n);
        // reduce against rows
        for (const auto& r : rows) {
            long piv = -1;
            for (long n = 0; n <= L0; ++n)
                if (!F.is_zero(r[n])) { piv = n; break; }
            if (piv < 0 || F.is_zero(v[piv])) continue;
            Elem f = F.mul(v[piv], F.inverse(r[piv]));
            for (long n = 0; n <= L0; ++n) v[n] = F.sub(v[n], F.mul(f, r[n]));
        }
        bool zero = true;
        for (long n = 0; n <= L0 && zero; ++n)
            if (!F.is_zero(v[n])) zero = false;
        if (!zero) {
            rows.push_back(std::move(v));
            keep.push_back(s);
        }
    }
    return keep;
}

} // namespace

NewformQexp extract_newform(const std::vector<QSeries>& basis, long weight, long level,
                            const DirichletCharacter& chi, long hecke_p,
                            const std::vector<Elem>& eisenstein_eigenvalues, long n_max) {
    const CycloField& F = *basis[0].F;
    size_t r = basis.size();
    long L0 = (long)(4 * r + 8);
    for (const auto& b : basis)
        if (b.length() <= hecke_p * L0)
            throw std::invalid_argument("extract_newform: basis series too short for Hecke prefix");

    // A[n][j] = coefficient n of basis j ; Y[n][i] = coefficient n of T_p basis i
    std::vector<std::vector<Elem>> A(L0 + 1, std::vector<Elem>(r, F.zero()));
    std::vector<std::vector<Elem>> Y(L0 + 1, std::vector<Elem>(r, F.zero()));
    std::vector<QSeries> tp;
    for (size_t i = 0; i < r; ++i) tp.push_back(hecke_tp(basis[i], hecke_p, weight, chi));
    for (long n = 0; n <= L0; ++n)
        for (size_t j = 0; j < r; ++j) {
            A[n][j] = basis[j].value(n);
            Y[n][j] = tp[j].value(n);
        }
    // columns of M: T_p b_i = sum_j M[j][i] b_j
    std::vector<Elem> Mflat = solve_linear(F, A, Y);
    auto M = [&](size_t row, size_t col) { return Mflat[row * r + col]; };

    // characteristic polynomial by Faddeev-LeVerrier: p(X) = X^r + c1 X^{r-1} + ... + cr
    std::vector<std::vector<Elem>> Ak(r, std::vector<Elem>(r, F.zero()));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) Ak[i][j] = M(i, j);
    std::vector<Elem> cpoly(r + 1, F.zero());
    cpoly[0] = F.one();  // leading
    std::vector<std::vector<Elem>> cur = Ak;
    for (size_t k = 1; k <= r; ++k) {
        Elem tr = F.zero();
        for (size_t i = 0; i < r; ++i) tr = F.add(tr, cur[i][i]);
        Elem ck = F.mul_scalar(tr, mpq_class(-1, (long)k));
        cpoly[k] = ck;
        if (k == r) break;
        // cur = M (cur + ck I)
        std::vector<std::vector<Elem>> tmp = cur;
        for (size_t i = 0; i < r; ++i) tmp[i][i] = F.add(tmp[i][i], ck);
        std::vector<std::vector<Elem>> nxt(r, std::vector<Elem>(r, F.zero()));
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) {
                Elem s = F.zero();
                for (size_t t = 0; t < r; ++t) s = F.add(s, F.mul(Ak[i][t], tmp[t][j]));
                nxt[i][j] = s;
            }
        cur = nxt;
    }

    // deflate the known Eisenstein eigenvalues
    std::vector<Elem> poly = cpoly;  // degree descending, poly[0] = 1
    for (const Elem& e : eisenstein_eigenvalues) {
        std::vector<Elem> quo(poly.size() - 1, F.zero());
        Elem carry = F.zero();
        for (size_t i = 0; i + 1 < poly.size(); ++i) {
            carry = (i == 0) ? poly[0] : F.add(poly[i], F.mul(carry, e));
            quo[i] = carry;
        }
        Elem rem = F.add(poly.back(), F.mul(carry, e));
        if (!F.is_zero(rem))
            throw std::logic_error("extract_newform: Eisenstein eigenvalue does not divide charpoly");
        poly = quo;
    }
    if (poly.size() != 2)
        throw std::logic_error("extract_newform: cuspidal part is not 1-dimensional here");
    // monic linear: X + poly[1] -> eigenvalue
    Elem lambda = F.neg(F.mul(poly[1], F.inverse(poly[0])));

    // kernel of (M - lambda I)
    std::vector<std::vector<Elem>> K(r, std::vector<Elem>(r, F.zero()));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) K[i][j] = (i == j) ? F.sub(M(i, j), lambda) : M(i, j);
    // gaussian elimination, find one kernel vector
    std::vector<size_t> pivcol;
    size_t rank = 0;
    for (size_t c = 0; c < r && rank < r; ++c) {
        size_t pr = SIZE_MAX;
        for (size_t row = rank; row < r; ++row)
            if (!F.is_zero(K[row][c])) { pr = row; break; }
        if (pr == SIZE_MAX) continue;
        std::swap(K[pr], K[rank]);
        Elem inv = F.inverse(K[rank][c]);
        for (size_t cc = 0; cc < r; ++cc) K[rank][cc] = F.mul(K[rank][cc], inv);
        for (size_t row = 0; row < r; ++row) {
            if (row == rank || F.is_zero(K[row][c])) continue;
            Elem f = K[row][c];
            for (size_t cc = 0; cc < r; ++cc) K[row][cc] = F.sub(K[row][cc], F.mul(f, K[rank][cc]));
        }
        pivcol.push_back(c);
        ++rank;
    }
    if (rank != r - 1) throw std::logic_error("extract_newform: eigenspace dimension != 1");
    // free column = the one not in pivcol
    std::vector<bool> is_piv(r, false);
    for (size_t c : pivcol) is_piv[c] = true;
    size_t freec = 0;
    while (is_piv[freec]) ++freec;
    std::vector<Elem> v(r, F.zero());
    v[freec] = F.one();
    for (size_t t = 0; t < pivcol.size(); ++t) v[pivcol[t]] = F.neg(K[t][freec]);

    // assemble the eigenform to n_max and normalize a_1 = 1
    NewformQexp out;
    out.F = &F;
    out.weight = weight;
    out.level = level;
    out.neben = chi;
    out.an.assign(n_max + 1, F.zero());
    long L = basis[0].length();
    for (const auto& b : basis) L = std::min(L, b.length());
    if (L <= n_max) throw std::invalid_argument("extract_newform: basis too short for requested n_max");
    std::vector<Elem> coeff(n_max + 1, F.zero());
    for (size_t j = 0; j < r; ++j) {
        if (F.is_zero(v[j])) continue;
        for (long n = 0; n <= n_max; ++n) coeff[n] = F.add(coeff[n], F.mul(v[j], basis[j].value(n)));
    }
    if (!F.is_zero(coeff[0])) throw std::logic_error("extract_newform: eigenvector not cuspidal");
    Elem a1inv = F.inverse(coeff[1]);
    for (long n = 1; n <= n_max; ++n) out.an[n] = F.mul(coeff[n], a1inv);
    return out;
}

// ---- catalog --------------------------------------------------------------------

NewformQexp make_newform_delta(long n_max) {
    const CycloField& F = cyclo_field(1);
    EtaQuotient q{{{1, 24}}};
    auto c = eta_expand(q, n_max);
    NewformQexp out;
    out.F = &F;
    out.weight = 12;
    out.level = 1;
    out.neben = DirichletCharacter(1);
    out.an.assign(n_max + 1, F.zero());
    for (long n = 1; n <= n_max; ++n) out.an[n] = F.from_rational(mpq_class(c[n - 1]));
    return out;
}

NewformQexp make_newform_11_2_a(long n_max) {
    const CycloField& F = cyclo_field(1);
    long L = std::max<long>(2 * (4 * 2 + 8) + 2, n_max + 1);
    DirichletCharacter triv11(11);
    DirichletCharacter leg = DirichletCharacter::kronecker(-11, 11);
    QSeries e2 = eisenstein2_level(11, L - 1, F);
    QSeries e1 = eisenstein_qexp(1, DirichletCharacter(1), leg, L - 1, F);
    QSeries prod = qs_mul(e1, e1);
    std::vector<CycloField::Elem> eis = {F.from_rational(3)};  // 1 + 2 on the weight-2 level series
    return extract_newform({e2, prod}, 2, 11, triv11, 2, eis, n_max);
}

NewformQexp make_newform_3_8_a(long n_max) {
    const CycloField& F = cyclo_field(1);
    long L = std::max<long>(2 * (4 * 3 + 8) + 2, n_max + 1);
    DirichletCharacter triv1(1), triv3(3);
    QSeries e8 = eisenstein_qexp(8, triv1, triv1, L - 1, F);
    QSeries e8_3 = qs_rescale_tau(e8, 3);
    QSeries d3 = eisenstein2_level(3, L - 1, F);
    QSeries d3_4 = qs_pow(d3, 4);
    std::vector<CycloField::Elem> eis = {F.from_rational(129), F.from_rational(129)};  // 1 + 2^7 twice
    return extract_newform({e8, e8_3, d3_4}, 8, 3, triv3, 2, eis, n_max);
}

NewformQexp make_newform_13_2_e(long n_max) {
    const CycloField& F = cyclo_field(12);
    long L = std::max<long>(2 * (4 * 3 + 8) + 2, n_max + 1);
    // chi(2) = e(1/6): sextic, even; omega(2) = e(1/12): generator, odd
    DirichletCharacter chi(13, {2});
    DirichletCharacter omega(13, {1});
    QSeries e2a = eisenstein_qexp(2, DirichletCharacter(1), chi, L - 1, F);
    QSeries e2b = eisenstein_qexp(2, chi, DirichletCharacter(1), L - 1, F);
    QSeries e1 = eisenstein_qexp(1, DirichletCharacter(1), omega, L - 1, F);
    QSeries prod = qs_mul(e1, e1);
    // Eisenstein T_2 eigenvalues: 1 + 2 chi(2) and chi(2) + 2
    CycloField::Elem z6 = F.from_root_of_unity(chi(2));
    std::vector<CycloField::Elem> eis = {
        F.add(F.one(), F.mul_scalar(z6, 2)),
        F.add(z6, F.from_rational(2)),
    };
    return extract_newform({e2a, e2b, prod}, 2, 13, chi, 2, eis, n_max);
}

std::vector<std::vector<Complex>> make_weight3_embeddings(long level, long n_max, Prec prec,
                                                          DirichletCharacter* chi_out) {
    const CycloField& F = cyclo_field(1);
    long L = std::max<long>(2 * (4 * 4 + 8) + 2, n_max + 1);
    DirichletCharacter chi = DirichletCharacter::kronecker(level % 4 == 3 ? -level : level, level);
    if (chi.parity() != -1) throw std::invalid_argument("weight-3 space needs an odd character");
    if (chi_out) *chi_out = chi;
    DirichletCharacter triv1(1);
    QSeries e3a = eisenstein_qexp(3, triv1, chi, L - 1, F);
    QSeries e3b = eisenstein_qexp(3, chi, triv1, L - 1, F);
    QSeries e1 = eisenstein_qexp(1, triv1, chi, L - 1, F);
    QSeries d = eisenstein2_level(level, L - 1, F);
    QSeries p1 = qs_mul(e1, d);
    QSeries p2 = qs_pow(e1, 3);
    std::vector<QSeries> basis = select_independent({e3a, e3b, p1, p2});

    // numeric route: diagonalize T_2 at high precision and keep the cuspidal
    // eigenvectors (those whose combinations have zero constant term and are
    // not the Eisenstein eigenvalues)
    long k = 3, p = 2;
    size_t r = basis.size();
    long L0 = (long)(4 * r + 8);
    Prec wp = prec + 64;
    // exact matrix first
    std::vector<std::vector<CycloField::Elem>> A(L0 + 1, std::vector<CycloField::Elem>(r, F.zero()));
    std::vector<std::vector<CycloField::Elem>> Y(L0 + 1, std::vector<CycloField::Elem>(r, F.zero()));
    std::vector<QSeries> tp;
    for (size_t i = 0; i < r; ++i) tp.push_back(hecke_tp(basis[i], p, k, chi));
    for (long n = 0; n <= L0; ++n)
        for (size_t j = 0; j < r; ++j) {
            A[n][j] = basis[j].value(n);
            Y[n][j] = tp[j].value(n);
        }
    auto Mflat = solve_linear(F, A, Y);
    // M as rational matrix
    auto Mq = [&](size_t i, size_t j) { return *F.as_rational(Mflat[i * r + j]); };

    // char poly (rational, degree 4), deflate Eisenstein eigenvalues 1+4chi(2), chi(2)+4
    std::vector<mpq_class> poly;  // monic descending
    {
        // Faddeev-LeVerrier over Q
        std::vector<std::vector<mpq_class>> Ak(r, std::vector<mpq_class>(r));
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) Ak[i][j] = Mq(i, j);
        std::vector<std::vector<mpq_class>> cur = Ak;
        poly.assign(r + 1, 0);
        poly[0] = 1;
        for (size_t kk = 1; kk <= r; ++kk) {
            mpq_class tr = 0;
            for (size_t i = 0; i < r; ++i) tr += cur[i][i];
            poly[kk] = -tr / (long)kk;
            if (kk == r) break;
            auto tmp = cur;
            for (size_t i = 0; i < r; ++i) tmp[i][i] += poly[kk];
            std::vector<std::vector<mpq_class>> nxt(r, std::vector<mpq_class>(r, mpq_class(0)));
            for (size_t i = 0; i < r; ++i)
                for (size_t j = 0; j < r; ++j)
                    for (size_t t = 0; t < r; ++t) nxt[i][j] += Ak[i][t] * tmp[t][j];
            cur = nxt;
        }
    }
    long c2 = mpz_class(chi(2).rational_value().get_num()).get_si();
    for (mpq_class e : {mpq_class(1 + 4 * c2), mpq_class(c2 + 4)}) {
        std::vector<mpq_class> quo(poly.size() - 1);
        mpq_class carry = 0;
        for (size_t i = 0; i + 1 < poly.size(); ++i) {
            carry = (i == 0) ? poly[0] : poly[i] + carry * e;
            quo[i] = carry;
        }
        mpq_class rem = poly.back() + carry * e;
        if (rem != 0) throw std::logic_error("weight-3 deflation failed");
        poly = quo;
    }
    // remaining quadratic (or linear) over Q; roots numerically
    std::vector<Complex> lambdas;
    if (poly.size() == 3) {
        Real a0 = Real::of(poly[2], wp), a1 = Real::of(poly[1], wp);
        Complex disc(a1 * a1 - 4 * a0);
        Complex sq = sqrt(disc);
        lambdas.push_back((Complex(-a1) + sq) / Real::of(2L, wp));
        lambdas.push_back((Complex(-a1) - sq) / Real::of(2L, wp));
    } else if (poly.size() == 2) {
        lambdas.push_back(Complex(Real::of(-poly[1], wp)));
    } else {
        throw std::logic_error("unexpected cuspidal dimension");
    }

    std::vector<std::vector<Complex>> out;
    for (const Complex& lam : lambdas) {
        // numeric kernel of (M - lam I)
        std::vector<std::vector<Complex>> K(r, std::vector<Complex>(r, Complex(wp)));
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) {
                K[i][j] = Complex(Real::of(Mq(i, j), wp));
                if (i == j) K[i][j] -= lam;
            }
        // elimination with max-modulus pivoting
        std::vector<long> piv(r, -1);
        size_t rank = 0;
        std::vector<size_t> pivcol;
        for (size_t c = 0; c < r && rank < r; ++c) {
            size_t pr = SIZE_MAX;
            Real best(wp);
            for (size_t row = rank; row < r; ++row) {
                Real m = abs(K[row][c]);
                if (pr == SIZE_MAX || m > best) { pr = row; best = m; }
            }
            if (best < Real::pow2(-(long)wp / 2, wp)) continue;  // treat as zero column
            std::swap(K[pr], K[rank]);
            Complex pivinv = inv(K[rank][c]);
            for (size_t cc = 0; cc < r; ++cc) K[rank][cc] = K[rank][cc] * pivinv;
            for (size_t row = 0; row < r; ++row) {
                if (row == rank) continue;
                Complex f = K[row][c];
                if (abs(f).is_zero()) continue;
                for (size_t cc = 0; cc < r; ++cc) K[row][cc] = K[row][cc] - f * K[rank][cc];
            }
            pivcol.push_back(c);
            ++rank;
        }
        if (rank != r - 1) throw std::logic_error("weight-3 eigenspace not 1-dimensional numerically");
        std::vector<bool> is_piv(r, false);
        for (size_t c : pivcol) is_piv[c] = true;
        size_t freec = 0;
        while (is_piv[freec]) ++freec;
        std::vector<Complex> v(r, Complex(wp));
        v[freec] = Complex::of(1, 0, wp);
        for (size_t t = 0; t < pivcol.size(); ++t) v[pivcol[t]] = -K[t][freec];
        // assemble
        std::vector<Complex> an(n_max + 1, Complex(wp));
        for (size_t j = 0; j < r; ++j) {
            for (long n = 0; n <= n_max; ++n) {
                auto e = basis[j].value(n);
                an[n] += v[j] * Real::of(*F.as_rational(e), wp);
            }
        }
        if (abs(an[0]).to_double() > 1e-20) throw std::logic_error("weight-3 eigenvector not cuspidal");
        Complex a1i = inv(an[1]);
        std::vector<Complex> norm(n_max + 1, Complex(prec));
        for (long n = 1; n <= n_max; ++n) {
            Complex z = an[n] * a1i;
            norm[n] = Complex(z.re.at_prec(prec), z.im.at_prec(prec));
        }
        out.push_back(std::move(norm));
    }
    return out;
}

} // namespace rankin
