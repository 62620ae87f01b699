// etaq: expand eta-quotient q-series exactly, certify coefficient identities
// via Sturm bounds, cross-check vanishing patterns against arithmetic
// predicates, and scan growth functions.
//
// Exit codes: 0 success, 1 mathematical failure (failed certificate,
// mismatch, forbidden zero), 2 usage/parse error, 3 arithmetic error,
// 4 unknown id.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "etaq/cache.hpp"
#include "etaq/registry.hpp"
#include "etaq/report.hpp"

namespace {

using namespace etaq;

constexpr int kExitPass = 0;
constexpr int kExitMathFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitArithmetic = 3;
constexpr int kExitUnknownId = 4;

std::filesystem::path default_cache_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("ETAQ_CACHE_DIR")) return env;
    return ".";
}

// parses "2", "3/2", "21/10"
Rational parse_rational_arg(const std::string& s) { return rat_from_string(s); }

struct ExpandArgs {
    std::string spec;
    long limit = 10;
    std::string format = "table";
    bool eta = false;
    bool include_n0 = true;
    std::string cache_dir;
};

int cmd_expand(const ExpandArgs& a) {
    EtaSpec spec = EtaSpec::parse(a.spec);
    std::optional<QExpansion> series;
    if (!a.cache_dir.empty()) {
        auto path = cache_path(default_cache_dir(a.cache_dir), spec.to_string(), 0,
                               24 * (a.limit + 1));
        if (std::filesystem::exists(path)) series = read_cache(path).series;
    }
    if (!series) series = a.eta ? eta_expand(spec, a.limit) : c_series(spec, a.limit);
    if (a.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < series->size(); ++i) {
            long k = series->exp24(i);
            if (!a.include_n0 && k == 0) continue;
            rows.push_back({{"n", exponent_string(k)}, {"value", series->coeff(i).to_string()}});
        }
        nlohmann::json out{{"spec", spec.to_string()}, {"limit", a.limit},
                           {"normalization", a.eta ? "eta" : "C"}, {"coefficients", rows}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < series->size(); ++i) {
            long k = series->exp24(i);
            if (!a.include_n0 && k == 0) continue;
            std::cout << exponent_string(k) << "\t" << series->coeff(i).to_string() << "\n";
        }
    }
    return kExitPass;
}

struct VerifyArgs {
    std::string id = "all";
    long limit = 2000;
    std::string format = "json";
};

int cmd_verify(const VerifyArgs& a) {
    std::vector<IdentityRecord> selected;
    if (a.id == "all") {
        for (auto& r : registry())
            if (!r.negative_control) selected.push_back(std::move(r));
    } else {
        auto rec = find_identity(a.id);
        if (!rec) {
            std::cerr << "unknown identity id: " << a.id << "\n";
            return kExitUnknownId;
        }
        selected.push_back(std::move(*rec));
    }
    bool all_pass = true;
    nlohmann::json out = nlohmann::json::array();
    for (const auto& rec : selected) {
        VerificationReport rep = verify_identity(rec, a.limit);
        all_pass = all_pass && rep.pass;
        if (a.format == "json") {
            out.push_back(to_json(rep));
        } else {
            std::cout << (rep.pass ? "PASS " : "FAIL ") << rec.id << "  bound=" << rep.sturm_bound
                      << " checked=" << rep.checked << " (" << rep.elapsed_ms << " ms)";
            if (rep.mismatch)
                std::cout << "  first mismatch at n=" << exponent_string(rep.mismatch->k24)
                          << ": " << rep.mismatch->lhs.to_string() << " vs "
                          << rep.mismatch->rhs.to_string();
            std::cout << "\n";
        }
    }
    if (a.format == "json") std::cout << out.dump(2) << "\n";
    return all_pass ? kExitPass : kExitMathFail;
}

struct VanishingArgs {
    std::string family;
    long limit = 10000;
    int jobs = 1;
    bool include_n0 = false;
    std::string format = "json";
};

int cmd_vanishing(const VanishingArgs& a) {
    auto fam = find_family(a.family);
    if (!fam) {
        std::cerr << "unknown family: " << a.family << "\n";
        return kExitUnknownId;
    }
    CrosscheckReport rep = crosscheck_vanishing(*fam, a.limit, a.jobs, a.include_n0);
    if (a.format == "json") {
        std::cout << to_json(rep).dump(2) << "\n";
    } else {
        std::cout << (rep.pass ? "PASS " : "FAIL ") << rep.id << "  checked=" << rep.checked
                  << " zeros=" << rep.zero_count << " (" << rep.elapsed_ms << " ms)\n";
        for (const auto& m : rep.mismatches)
            std::cout << "  mismatch n=" << m.n << " coefficient=" << m.coeff
                      << " predicate=" << (m.predicate ? "vanish" : "nonzero") << "\n";
    }
    return rep.pass ? kExitPass : kExitMathFail;
}

struct ScanArgs {
    std::string target;
    long limit = 50000;
    long mod = 3;
    long residue = 1;
    long floor = -1;
    std::string threshold;
    int jobs = 1;
    std::string format = "json";
    std::string cache_dir;
};

int cmd_scan(const ScanArgs& a) {
    if (a.target == "G1" || a.target == "G2") {
        GrowthG which = a.target == "G1" ? GrowthG::G1 : GrowthG::G2;
        long floor = a.floor >= 0 ? a.floor : (which == GrowthG::G1 ? 1120 : 309400);
        if (floor >= a.limit) {
            std::cerr << "empty scan range: floor " << floor << " >= limit " << a.limit << "\n";
            return kExitUsage;
        }
        std::optional<Rational> min_g2;
        long arg_min = 0, checked = 0;
        for (long n = floor + 1; n <= a.limit; ++n) {
            if (a.mod > 1 && n % a.mod != a.residue) continue;
            ++checked;
            Rational g2 = growth_G_squared(which, n);
            if (!min_g2 || g2 < *min_g2) {
                min_g2 = g2;
                arg_min = n;
            }
        }
        bool pass = true;
        nlohmann::json j{{"id", a.target}, {"mod", a.mod},         {"residue", a.residue},
                         {"limit", a.limit}, {"g_floor", floor},   {"checked", checked},
                         {"min_G_squared", to_string(*min_g2)},    {"argmin", arg_min},
                         {"min_G_approx", std::sqrt(min_g2->get_d())}};
        if (!a.threshold.empty()) {
            Rational t = parse_rational_arg(a.threshold);
            pass = *min_g2 > t * t;
            j["threshold"] = to_string(t);
        }
        j["status"] = pass ? "PASS" : "FAIL";
        if (a.format == "json")
            std::cout << j.dump(2) << "\n";
        else
            std::cout << (pass ? "PASS " : "FAIL ") << a.target << "  min G ~ "
                      << std::sqrt(min_g2->get_d()) << " at n=" << arg_min << "\n";
        return pass ? kExitPass : kExitMathFail;
    }
    if (a.target != "f1" && a.target != "f2") {
        std::cerr << "unknown scan target: " << a.target << "\n";
        return kExitUnknownId;
    }
    ScanTarget target = a.target == "f1" ? ScanTarget::f1 : ScanTarget::f2;
    EtaSpec spec = scan_spec(target);
    std::optional<std::vector<Integer>> coeffs;
    std::filesystem::path cpath;
    bool use_cache = !a.cache_dir.empty() || std::getenv("ETAQ_CACHE_DIR") != nullptr;
    if (use_cache) {
        cpath = cache_path(default_cache_dir(a.cache_dir), spec.to_string(), 0,
                           24 * (a.limit + 1));
        if (std::filesystem::exists(cpath)) {
            QExpansion f = read_cache(cpath).series;
            std::vector<Integer> c(static_cast<std::size_t>(a.limit) + 1);
            for (long n = 0; n <= a.limit; ++n) c[static_cast<std::size_t>(n)] = f.at(n).a().get_num();
            coeffs = std::move(c);
        }
    }
    if (!coeffs) {
        coeffs = detail::c_series_integer(spec, a.limit);
        if (use_cache)
            write_cache(cpath, spec.to_string(), QExpansion::from_integer_coeffs(*coeffs));
    }
    ScanReport rep = scan_nonvanishing(target, a.mod, a.residue, a.limit, a.jobs, a.floor,
                                       &*coeffs);
    bool pass = rep.pass;
    nlohmann::json j = to_json(rep);
    if (!a.threshold.empty() && rep.min_G2) {
        Rational t = parse_rational_arg(a.threshold);
        pass = pass && *rep.min_G2 > t * t;
        j["threshold"] = to_string(t);
        j["status"] = pass ? "PASS" : "FAIL";
    }
    if (a.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << (pass ? "PASS " : "FAIL ") << rep.target << "  checked=" << rep.checked
                  << " zeros=" << rep.zeros.size() << " (" << rep.elapsed_ms << " ms)\n";
    return pass ? kExitPass : kExitMathFail;
}

struct SturmArgs {
    std::string weight;
    long level = 1;
};

int cmd_sturm(const SturmArgs& a) {
    Rational w = parse_rational_arg(a.weight);
    Rational w2 = w * 2;
    if (!is_integer(w2) || w2 <= 0)
        throw HypothesisViolation("weight must be a positive half-integer");
    std::cout << sturm_bound(w2.get_num().get_si(), a.level) << "\n";
    return kExitPass;
}

struct CacheArgs {
    std::string action;
    std::string spec;
    long limit = 0;
    std::string cache_dir;
};

int cmd_cache(const CacheArgs& a) {
    std::filesystem::path dir = default_cache_dir(a.cache_dir);
    if (a.action == "list") {
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
            if (entry.path().extension() != ".jsonl") continue;
            try {
                CachedSeries c = read_cache(entry.path());
                std::cout << entry.path().filename().string() << "\tspec=" << c.spec
                          << "\ttrunc24=" << c.series.trunc24() << "\n";
            } catch (const EtaqError&) {
                std::cout << entry.path().filename().string() << "\t(unreadable)\n";
            }
        }
        return kExitPass;
    }
    if (a.spec.empty() || a.limit < 1) {
        std::cerr << "cache " << a.action << " requires --spec and --limit\n";
        return kExitUsage;
    }
    EtaSpec spec = EtaSpec::parse(a.spec);
    QExpansion fresh = c_series(spec, a.limit);
    auto path = cache_path(dir, spec.to_string(), 0, fresh.trunc24());
    if (a.action == "write") {
        std::filesystem::create_directories(dir);
        write_cache(path, spec.to_string(), fresh);
        std::cout << path.string() << "\n";
        return kExitPass;
    }
    if (a.action == "check") {
        if (!std::filesystem::exists(path)) {
            std::cerr << "no cache file " << path.string() << "\n";
            return kExitUnknownId;
        }
        CachedSeries cached = read_cache(path);
        auto mm = qx_first_mismatch(cached.series, fresh, fresh.trunc24());
        if (mm) {
            std::cout << "MISMATCH at n=" << exponent_string(mm->k24) << ": cached "
                      << mm->lhs.to_string() << " vs recomputed " << mm->rhs.to_string() << "\n";
            return kExitMathFail;
        }
        std::cout << "OK " << path.string() << "\n";
        return kExitPass;
    }
    std::cerr << "unknown cache action: " << a.action << " (expected write|check|list)\n";
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact eta-quotient q-expansions, Sturm-bound identity certification, "
                 "vanishing-set cross-checks, and growth scans"};
    app.require_subcommand(1);

    ExpandArgs ea;
    auto* expand = app.add_subcommand("expand", "expand a q-Pochhammer product");
    expand->add_option("spec", ea.spec, "eta-spec, e.g. \"1^-1 3^3 4^2\"")->required();
    expand->add_option("--limit", ea.limit, "highest coefficient index")->check(CLI::PositiveNumber);
    expand->add_option("--format", ea.format)->check(CLI::IsMember({"json", "table"}));
    expand->add_flag("--eta", ea.eta, "include the q^{sum(delta r)/24} prefactor");
    expand->add_option("--cache-dir", ea.cache_dir, "reuse cached coefficients if present");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "certify registry identities");
    verify->add_option("id", va.id, "identity id or 'all'");
    verify->add_option("--limit", va.limit)->check(CLI::PositiveNumber);
    verify->add_option("--format", va.format)->check(CLI::IsMember({"json", "table"}));

    VanishingArgs na;
    auto* vanishing = app.add_subcommand("vanishing", "cross-check a vanishing family");
    vanishing->add_option("--family", na.family)->required();
    vanishing->add_option("--limit", na.limit)->check(CLI::PositiveNumber);
    vanishing->add_option("--jobs", na.jobs)->check(CLI::PositiveNumber);
    vanishing->add_flag("--include-n0", na.include_n0, "also test the constant term");
    vanishing->add_option("--format", na.format)->check(CLI::IsMember({"json", "table"}));

    ScanArgs sa;
    auto* scan = app.add_subcommand("scan", "non-vanishing / growth scans");
    scan->add_option("--target", sa.target, "f1 | f2 | G1 | G2")->required();
    scan->add_option("--limit", sa.limit)->check(CLI::PositiveNumber);
    scan->add_option("--mod", sa.mod)->check(CLI::PositiveNumber);
    scan->add_option("--residue", sa.residue);
    scan->add_option("--floor", sa.floor, "report G only above this index");
    scan->add_option("--threshold", sa.threshold, "rational threshold for min G, e.g. 4/3");
    scan->add_option("--jobs", sa.jobs)->check(CLI::PositiveNumber);
    scan->add_option("--format", sa.format)->check(CLI::IsMember({"json", "table"}));
    scan->add_option("--cache-dir", sa.cache_dir, "cache directory (default $ETAQ_CACHE_DIR)");

    SturmArgs ta;
    auto* sturm = app.add_subcommand("sturm", "print the Sturm bound of a space");
    sturm->add_option("--weight", ta.weight, "half-integer weight, e.g. 3/2")->required();
    sturm->add_option("--level", ta.level)->required()->check(CLI::PositiveNumber);

    CacheArgs ca;
    auto* cache = app.add_subcommand("cache", "manage coefficient caches");
    cache->add_option("action", ca.action, "write | check | list")->required();
    cache->add_option("--spec", ca.spec);
    cache->add_option("--limit", ca.limit);
    cache->add_option("--cache-dir", ca.cache_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*expand) return cmd_expand(ea);
        if (*verify) return cmd_verify(va);
        if (*vanishing) return cmd_vanishing(na);
        if (*scan) return cmd_scan(sa);
        if (*sturm) return cmd_sturm(ta);
        if (*cache) return cmd_cache(ca);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const EtaqError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArithmetic;
    }
    return kExitUsage;
}
