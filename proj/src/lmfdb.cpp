#include "rankin/forms.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>

#include "rankin/vendor_json_fwd.hpp"

namespace rankin {

using nlohmann::json;
using nlohmann::ordered_json;

std::string resolve_label(const std::string& label) {
    // static legacy -> modern map for the paper's examples; pass-through otherwise
    if (label == "3.8.a") return "3.8.a.a";
    return label;
}

static bool env_offline() {
    const char* v = std::getenv("RANKIN_OFFLINE");
    return v && *v && std::string(v) != "0";
}

static std::string effective_base_url(const LmfdbOptions& opt) {
    if (!opt.base_url.empty()) return opt.base_url;
    if (const char* v = std::getenv("RANKIN_LMFDB_URL"); v && *v) return v;
    return "https://www.lmfdb.org";
}

// exact rational or decimal string -> Real
static Real real_from_field(const json& v, Prec prec) {
    if (v.is_number_integer()) return Real::of((long)v.get<long long>(), prec);
    std::string s = v.get<std::string>();
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpq_class q(s);
        q.canonicalize();
        return Real::of(q, prec);
    }
    return Real::from_str(s, prec);
}

void write_cache_file(const std::filesystem::path& path, const Newform& f, long n_max) {
    std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp);
        if (!os) throw Error("cannot open cache file for writing: " + tmp.string());
        Prec prec = f.stored_prec > 0 ? f.stored_prec : 192;
        ordered_json header;
        header["schema"] = "rankin-newform-cache/1";
        header["label"] = f.label;
        header["weight"] = f.weight;
        header["level"] = f.level;
        header["character"] = f.neben.to_json();
        header["embedding"] = f.embedding;
        header["precision"] = (long)prec;
        header["source"] = f.source;
        os << header.dump() << "\n";
        size_t digits = (size_t)(prec * 0.30103) + 4;
        for (long n = 1; n <= n_max; ++n) {
            const auto& c = f.a(n);
            ordered_json row;
            row["n"] = n;
            if (c.exact) {
                auto r = c.rational();
                if (r) {
                    row["re"] = r->get_str();
                    row["im"] = "0";
                    row["exact"] = true;
                } else {
                    Complex z = c.to_complex(prec);
                    row["re"] = z.re.str(digits);
                    row["im"] = z.im.str(digits);
                    row["exact"] = true;
                    ordered_json cyc;
                    cyc["m"] = c.exact->first;
                    std::vector<std::string> coords;
                    for (const auto& x : c.exact->second) coords.push_back(x.get_str());
                    cyc["coords"] = coords;
                    row["cyc"] = cyc;
                }
            } else {
                Complex z = c.to_complex(prec);
                row["re"] = z.re.str(digits);
                row["im"] = z.im.str(digits);
                row["exact"] = false;
            }
            os << row.dump() << "\n";
        }
    }
    std::filesystem::rename(tmp, path);
}

Newform read_cache_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw NotFound("cache file not found: " + path.string());
    std::string line;
    if (!std::getline(is, line)) throw SchemaMismatch("empty cache file: " + path.string());
    json header = json::parse(line, nullptr, false);
    if (header.is_discarded() || !header.contains("schema") ||
        header["schema"].get<std::string>() != "rankin-newform-cache/1")
        throw SchemaMismatch("bad cache header in " + path.string());

    Newform f;
    f.label = header.at("label").get<std::string>();
    f.weight = header.at("weight").get<long>();
    f.level = header.at("level").get<long>();
    f.neben = DirichletCharacter::from_json(header.at("character"));
    f.embedding = header.value("embedding", 0);
    f.stored_prec = header.value("precision", 192L);
    f.source = header.value("source", "file");
    f.an_.resize(1);
    Prec prec = f.stored_prec;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        json row = json::parse(line, nullptr, false);
        if (row.is_discarded() || !row.contains("n")) throw SchemaMismatch("bad cache row in " + path.string());
        long n = row["n"].get<long>();
        if ((long)f.an_.size() <= n) f.an_.resize(n + 1);
        Newform::Coeff c;
        bool exact = row.value("exact", false);
        if (exact && row.contains("cyc")) {
            long m = row["cyc"]["m"].get<long>();
            std::vector<mpq_class> coords;
            for (const auto& s : row["cyc"]["coords"]) {
                mpq_class q(s.get<std::string>());
                q.canonicalize();
                coords.push_back(q);
            }
            c.exact = {m, coords};
        } else if (exact) {
            mpq_class q(row["re"].get<std::string>());
            q.canonicalize();
            c.exact = {1L, std::vector<mpq_class>{q}};
        } else {
            c.emb = Complex(real_from_field(row["re"], prec), real_from_field(row["im"], prec));
        }
        f.an_[n] = c;
    }
    // contiguity check
    for (long n = 1; n < (long)f.an_.size(); ++n)
        if (!f.an_[n].exact && !f.an_[n].emb)
            throw SchemaMismatch("cache file has a gap at n = " + std::to_string(n));
    return f;
}

// Parse a coefficient-service response. Accepted shape:
// {"data":[{"label":..,"weight":..,"level":..,
//           "character":{"modulus":..,"exponents":[..]},
//           "an":[[re,im],...] or ["p/q",...] (1-based order starting at n=1)}]}
static Newform parse_remote(const std::string& body, const std::string& label) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded()) throw SchemaMismatch("remote response is not JSON");
    if (!j.contains("data") || !j["data"].is_array() || j["data"].empty())
        throw NotFound("label not found upstream: " + label);
    const json& d = j["data"][0];
    try {
        Newform f;
        f.label = d.value("label", label);
        f.weight = d.at("weight").get<long>();
        f.level = d.at("level").get<long>();
        f.neben = DirichletCharacter::from_json(d.at("character"));
        f.source = "lmfdb";
        f.stored_prec = 192;
        f.an_.resize(1);
        const json& an = d.at("an");
        long n = 0;
        for (const auto& v : an) {
            ++n;
            Newform::Coeff c;
            if (v.is_array()) {
                c.emb = Complex(real_from_field(v[0], 192), real_from_field(v[1], 192));
            } else if (v.is_number_integer()) {
                c.exact = {1L, std::vector<mpq_class>{mpq_class((long)v.get<long long>())}};
            } else {
                mpq_class q(v.get<std::string>());
                q.canonicalize();
                c.exact = {1L, std::vector<mpq_class>{q}};
            }
            f.an_.push_back(c);
        }
        return f;
    } catch (const json::exception& e) {
        throw SchemaMismatch(std::string("remote newform record malformed: ") + e.what());
    }
}

Newform fetch_lmfdb(const std::string& label_in, long n_max, const LmfdbOptions& opt) {
    std::string label = resolve_label(label_in);
    bool offline = opt.offline || env_offline();
    std::filesystem::path cache = opt.cache_dir / (label + ".jsonl");

    if (std::filesystem::exists(cache)) {
        Newform f = read_cache_file(cache);
        if (f.available() >= n_max) return f;
        if (offline)
            throw NotEnoughCoefficients("cache for " + label + " has " + std::to_string(f.available()) +
                                        " coefficients < " + std::to_string(n_max) + " and offline mode is set");
    }
    if (offline) throw NetworkUnavailable("offline mode with cold cache for label " + label);

    std::string base = effective_base_url(opt);
    // split scheme://host and path prefix
    std::string host = base, prefix;
    auto scheme_pos = host.find("://");
    std::string scheme = "http";
    if (scheme_pos != std::string::npos) {
        scheme = host.substr(0, scheme_pos);
        host = host.substr(scheme_pos + 3);
    }
    auto slash = host.find('/');
    if (slash != std::string::npos) {
        prefix = host.substr(slash);
        host = host.substr(0, slash);
    }
    std::string target = prefix + "/api/newforms/?label=" + label + "&n_max=" + std::to_string(n_max) +
                         "&_format=json";
    httplib::Result res;
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
    if (scheme == "https") {
        httplib::SSLClient cli(host);
        cli.set_connection_timeout(10);
        res = cli.Get(target);
    } else
#endif
    {
        httplib::Client cli(host);
        cli.set_connection_timeout(10);
        res = cli.Get(target);
    }
    if (!res) throw NetworkUnavailable("cannot reach " + host);
    if (res->status == 404) throw NotFound("label not found: " + label);
    if (res->status != 200) throw NetworkUnavailable("upstream returned status " + std::to_string(res->status));

    Newform f = parse_remote(res->body, label);
    if (f.available() < n_max)
        throw NotEnoughCoefficients("upstream returned only " + std::to_string(f.available()) + " coefficients");
    write_cache_file(cache, f, f.available());
    Newform reread = read_cache_file(cache);
    return reread;
}

} // namespace rankin
