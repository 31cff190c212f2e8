#pragma once

// Newform data model: exact (cyclotomic-rational) or embedded coefficients,
// lazy extension through a generator backend, Hecke-consistency validation,
// dual forms, and the LMFDB client with offline JSONL cache.

#include "rankin/cyclotomic.hpp"
#include "rankin/errors.hpp"
#include "rankin/qexp.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rankin {

const CycloField& cyclo_field(long m);

class Newform {
public:
    struct Coeff {
        // exact value in Q(zeta_m): (m, coordinates); m = 1 means rational
        std::optional<std::pair<long, std::vector<mpq_class>>> exact;
        // embedded value (fixed precision from the source)
        std::optional<Complex> emb;

        Complex to_complex(Prec prec) const;
        std::optional<mpq_class> rational() const;
        Coeff conjugated() const;
        bool is_exact() const { return exact.has_value(); }
    };

    long weight = 0;  // actual weight (k+2 in the paper's indexing)
    long level = 1;
    DirichletCharacter neben{1};
    std::string label;
    std::string source;  // eta | file | lmfdb | qexp
    int embedding = 0;
    Prec stored_prec = 0;  // for embedded sources

    void ensure(long n);                     // extend coefficients to a_n
    long available() const { return (long)an_.size() - 1; }
    const Coeff& a(long n) const;
    Complex ac(long n, Prec prec) const { return a(n).to_complex(prec); }
    std::optional<mpq_class> a_rational(long n) const { return a(n).rational(); }

    // backends
    static Newform from_eta(const EtaQuotient& q, long weight, long level,
                            const std::string& label, long n_init = 64);
    static Newform from_qexp_generator(const std::string& label, long n_init = 64);
    static Newform from_embeddings(const std::string& label, long level, long weight,
                                   const DirichletCharacter& chi, std::vector<Complex> an,
                                   int embedding, Prec stored_prec);

    std::vector<Coeff> an_;  // 1-based; an_[0] unused
    std::function<void(Newform&, long)> extender_;
};

Newform dual_form(const Newform& f);

struct HeckeViolation {
    long n;
    std::string kind;    // "a1" | "mult" | "recurrence" | "deligne"
    std::string detail;
};
std::vector<HeckeViolation> hecke_validate(Newform& f, long n_max);

// ---- LMFDB client ------------------------------------------------------------

struct LmfdbOptions {
    std::filesystem::path cache_dir;
    bool offline = false;
    std::string base_url;  // empty -> env RANKIN_LMFDB_URL -> default
};

// Fetch (or load from cache) a newform by label; guarantees >= n_max coefficients.
Newform fetch_lmfdb(const std::string& label, long n_max, const LmfdbOptions& opt);

// cache file helpers (JSONL, one header line + one line per coefficient)
void write_cache_file(const std::filesystem::path& path, const Newform& f, long n_max);
Newform read_cache_file(const std::filesystem::path& path);
std::string resolve_label(const std::string& label);  // legacy -> modern map

// central catalog used by pipelines and tests
Newform load_form(const std::string& name, long n_max, const LmfdbOptions& opt);

} // namespace rankin
