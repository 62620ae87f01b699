#pragma once

#include <array>
#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "etaq/forms.hpp"
#include "etaq/parallel.hpp"

namespace etaq {

// ---------------------------------------------------------------------------
// Sturm / valence bound
// ---------------------------------------------------------------------------

// floor(N * (kappa/12) * prod_{p|N} (1 + 1/p)), evaluated in exact rationals.
// A form in M_kappa(Gamma_0(N), chi) whose coefficients vanish through this
// index vanishes identically.
inline long sturm_bound(long weight2, long N) {
    if (N < 1 || weight2 <= 0) throw HypothesisViolation("sturm_bound requires N, kappa >= 1");
    Rational b = rat(N) * rat(weight2, 24);
    for (const auto& [p, e] : factorize(N)) b *= rat(p + 1, p);
    return floor_rat(b).get_si();
}

inline long sturm_bound(const FormMeta& meta) { return sturm_bound(meta.weight2, meta.level); }

// ---------------------------------------------------------------------------
// Identity registry records and verification
// ---------------------------------------------------------------------------

using SeriesRecipe = std::function<QExpansion(long limit)>;

struct IdentityRecord {
    std::string id;
    std::string description;
    FormMeta meta;          // common certifying space
    long grid_per_index;    // grid units (1/24) per certifying-space index
    long grid_offset = 0;   // grid exponent of space index 0
    long extra_check_limit = 2000;
    bool negative_control = false;
    SeriesRecipe lhs, rhs;

    long bound_space() const { return sturm_bound(meta); }
    // last grid exponent that must agree for the certificate
    long bound24() const { return grid_offset + grid_per_index * bound_space(); }
};

struct VerificationReport {
    std::string id;
    bool pass = false;
    long sturm_bound = 0;
    long checked = 0;  // grid coefficients compared
    std::optional<Mismatch> mismatch;
    long elapsed_ms = 0;
    std::string space;
    std::string description;
};

inline VerificationReport verify_identity(const IdentityRecord& rec, long limit) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.id = rec.id;
    rep.sturm_bound = rec.bound_space();
    rep.space = rec.meta.space_string();
    rep.description = rec.description;
    long effective = std::max(limit, rec.extra_check_limit);
    // the build window must reach past the certificate exponent
    long need_n = (rec.bound24() + 23) / 24 + 1;
    effective = std::max(effective, need_n);
    QExpansion lhs = [&] {
        try {
            return rec.lhs(effective);
        } catch (const EtaqError& e) {
            throw RecipeEvaluationError(rec.id + " lhs: " + e.what());
        }
    }();
    QExpansion rhs = [&] {
        try {
            return rec.rhs(effective);
        } catch (const EtaqError& e) {
            throw RecipeEvaluationError(rec.id + " rhs: " + e.what());
        }
    }();
    long compared = 0;
    auto mm = qx_first_mismatch(lhs, rhs, 24 * effective, &compared);
    rep.checked = compared;
    rep.mismatch = mm;
    long covered = std::min(lhs.trunc24(), rhs.trunc24()) - 1;
    rep.pass = !mm.has_value() && covered >= rec.bound24();
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

// ---------------------------------------------------------------------------
// Vanishing predicates and family cross-checks
// ---------------------------------------------------------------------------

enum class PredicateId {
    OrdOddP3Mod4,          // exists p = 3 mod 4 with ord_p odd
    OrdOddP5or7Mod8,       // exists p = 5,7 mod 8 with ord_p odd
    OrdOddP2Mod3,          // exists p = 2 mod 3 with ord_p odd (p = 2 included)
    N2Mod3AndOrdOddP3Mod4, // n = 2 mod 3 and exists p = 3 mod 4 with ord_p odd
    FourKTimes8MPlus7,     // n = 4^k (8m+7)
    Never,                 // empty vanishing set
};

inline bool vanishing_predicate(PredicateId which, long value) {
    if (value < 0) throw HypothesisViolation("predicate argument must be nonnegative");
    if (value == 0) return false;  // constant terms never vanish in these families
    switch (which) {
        case PredicateId::OrdOddP3Mod4:
            for (const auto& [p, e] : factorize(value))
                if (p % 4 == 3 && e % 2 == 1) return true;
            return false;
        case PredicateId::OrdOddP5or7Mod8:
            for (const auto& [p, e] : factorize(value))
                if ((p % 8 == 5 || p % 8 == 7) && e % 2 == 1) return true;
            return false;
        case PredicateId::OrdOddP2Mod3:
            for (const auto& [p, e] : factorize(value))
                if (p % 3 == 2 && e % 2 == 1) return true;
            return false;
        case PredicateId::N2Mod3AndOrdOddP3Mod4:
            if (value % 3 != 2) return false;
            return vanishing_predicate(PredicateId::OrdOddP3Mod4, value);
        case PredicateId::FourKTimes8MPlus7: {
            long v = value;
            while (v % 4 == 0) v /= 4;
            return v % 8 == 7;
        }
        case PredicateId::Never: return false;
    }
    throw HypothesisViolation("unknown predicate");
}

struct VanishingFamily {
    std::string id;
    EtaSpec spec;       // C-series convention
    long map_u = 1;     // predicate argument u*n + v
    long map_v = 0;
    PredicateId predicate;
};

inline std::vector<VanishingFamily> vanishing_families() {
    auto fam = [](const char* id, const char* spec, long u, long v, PredicateId p) {
        return VanishingFamily{id, EtaSpec::parse(spec), u, v, p};
    };
    return {
        fam("L52-1", "1^-1 3^3 4^2", 3, 2, PredicateId::OrdOddP3Mod4),
        fam("L52-2", "1^4 2^-2 4^4", 3, 2, PredicateId::OrdOddP3Mod4),
        fam("L95-1", "1^1 2^-2 4^3", 8, 3, PredicateId::OrdOddP5or7Mod8),
        fam("L95-2", "1^1 2^2 4^1", 8, 3, PredicateId::OrdOddP5or7Mod8),
        fam("L95-3", "1^3 2^-1 4^2", 8, 3, PredicateId::OrdOddP5or7Mod8),
        fam("L95-4", "1^3 2^3", 8, 3, PredicateId::OrdOddP5or7Mod8),
        fam("L95-5", "1^7 2^-3 4^2", 8, 3, PredicateId::OrdOddP5or7Mod8),
        fam("L65-1", "1^-1 2^10 3^-1 4^-4", 1, 0, PredicateId::N2Mod3AndOrdOddP3Mod4),
        fam("L65-2", "1^7 2^-2 3^-1", 1, 0, PredicateId::N2Mod3AndOrdOddP3Mod4),
        fam("L133-1", "1^2 2^3 4^-2", 1, 0, PredicateId::FourKTimes8MPlus7),
        fam("L133-2", "1^6 2^-3", 1, 0, PredicateId::FourKTimes8MPlus7),
        fam("INTRO-1^8", "1^8", 3, 1, PredicateId::OrdOddP2Mod3),
        fam("INTRO-1^-1.3^3", "1^-1 3^3", 3, 1, PredicateId::OrdOddP2Mod3),
        fam("INTRO-1^2.3^2", "1^2 3^2", 3, 1, PredicateId::OrdOddP2Mod3),
        fam("INTRO-LAGRANGE", "1^-8 2^20 4^-8", 1, 0, PredicateId::Never),
    };
}

inline std::optional<VanishingFamily> find_family(const std::string& key) {
    for (const auto& f : vanishing_families()) {
        if (f.id == key) return f;
        try {
            if (EtaSpec::parse(key).to_string() == f.spec.to_string()) return f;
        } catch (const ParseError&) {
        }
    }
    return std::nullopt;
}

struct CrosscheckMismatch {
    long n;
    std::string coeff;
    bool predicate;
};

struct CrosscheckReport {
    std::string id;
    bool pass = false;
    long checked = 0;
    long zero_count = 0;
    long nonzero_count = 0;
    std::vector<CrosscheckMismatch> mismatches;
    long elapsed_ms = 0;
};

// Asserts coefficient-vanishing == predicate for 1 <= n <= limit (n = 0 is
// included on request).  The series is built once; the index range is then
// checked by a deterministic chunked worker pool.
inline CrosscheckReport crosscheck_vanishing(const VanishingFamily& family, long limit,
                                             int jobs = 1, bool include_n0 = false) {
    if (limit < 1) throw HypothesisViolation("crosscheck requires limit >= 1");
    auto t0 = std::chrono::steady_clock::now();
    const std::vector<Integer> coeffs = detail::c_series_integer(family.spec, limit);
    struct Chunk {
        long zero = 0, nonzero = 0;
        std::vector<CrosscheckMismatch> mismatches;
    };
    long lo = include_n0 ? 0 : 1;
    auto chunks = run_chunked<Chunk>(lo, limit + 1, jobs, 4096, [&](long a, long b) {
        Chunk ch;
        for (long n = a; n < b; ++n) {
            bool zero = mpz_sgn(coeffs[static_cast<std::size_t>(n)].get_mpz_t()) == 0;
            bool pred = vanishing_predicate(family.predicate, family.map_u * n + family.map_v);
            (zero ? ch.zero : ch.nonzero)++;
            if (zero != pred && ch.mismatches.size() < 32)
                ch.mismatches.push_back(
                    {n, coeffs[static_cast<std::size_t>(n)].get_str(), pred});
        }
        return ch;
    });
    CrosscheckReport rep;
    rep.id = family.id;
    for (const auto& ch : chunks) {
        rep.zero_count += ch.zero;
        rep.nonzero_count += ch.nonzero;
        for (const auto& m : ch.mismatches)
            if (rep.mismatches.size() < 32) rep.mismatches.push_back(m);
    }
    rep.checked = rep.zero_count + rep.nonzero_count;
    rep.pass = rep.mismatches.empty();
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

// ---------------------------------------------------------------------------
// Growth functions of the non-vanishing estimates
// ---------------------------------------------------------------------------

// F_p(nu): the exact divisor-sum magnitude table
//   p = 2:                (2^{nu+2} - 1)/3
//   p = +-1 mod 12:       (p^{nu+1} - 1)/(p - 1)
//   p = +-5 mod 12, even: (p^{nu+1} + 1)/(p + 1)
//   p = +-5 mod 12, odd:  (p^{nu+1} - 1)/(p + 1)
inline Rational growth_F(long p, long nu) {
    if (!is_prime(p)) throw HypothesisViolation("growth_F requires a prime");
    if (nu < 0) throw HypothesisViolation("growth_F requires nu >= 0");
    Integer pk = pow_int(Integer(p), static_cast<unsigned long>(nu + 1));
    if (p == 2) return rat(pk * 2 - 1, 3);
    long m = p % 12;
    if (m == 1 || m == 11) return rat(pk - 1, p - 1);
    if (nu % 2 == 0) return rat(pk + 1, p + 1);
    return rat(pk - 1, p + 1);
}

enum class GrowthG { G1, G2 };

// G(n)^2 as an exact rational (squaring clears the p^{nu/2} factors):
// G1 uses F_p everywhere; G2 replaces the p = 2 numerator by 2^{nu+1} - 1.
inline Rational growth_G_squared(GrowthG which, long n) {
    if (n < 1) throw HypothesisViolation("growth_G requires n >= 1");
    Rational g2(1);
    for (const auto& [p, e] : factorize(n)) {
        Rational num;
        if (p == 2 && which == GrowthG::G2)
            num = rat(pow_int(Integer(2), static_cast<unsigned long>(e + 1)) - 1);
        else
            num = growth_F(p, e);
        Rational den2 = rat((e + 1) * (e + 1)) * rat(pow_int(Integer(p), static_cast<unsigned long>(e)));
        g2 *= num * num / den2;
    }
    return g2;
}

// Decides f_{alpha,nu}(x) = x^{nu+1} - 1 - alpha(nu+1)(x+1)x^{nu/2} >= 0 by
// comparing (x^{nu+1}-1)^2 against alpha^2 (nu+1)^2 (x+1)^2 x^nu exactly.
inline bool growth_f_nonneg(const Rational& alpha, long nu, long x) {
    if (nu < 1 || x < 3) throw HypothesisViolation("growth_f_nonneg requires nu >= 1, x >= 3");
    Rational lhs = rat(pow_int(Integer(x), static_cast<unsigned long>(nu + 1)) - 1);
    Rational rhs_sq = alpha * alpha * rat((nu + 1) * (nu + 1)) * rat((x + 1) * (x + 1)) *
                      rat(pow_int(Integer(x), static_cast<unsigned long>(nu)));
    return lhs * lhs >= rhs_sq;
}

// ---------------------------------------------------------------------------
// Closed-form Eisenstein coefficients (the script E1 / E2 series)
// ---------------------------------------------------------------------------

enum class EisClosed { E1, E2 };

// Coefficient of q^n in the closed-form product: a case prefactor in
// (nu_2, nu_3, symbols at m) times prod_{p | m} geometric factors, where
// n = 2^{nu2} 3^{nu3} m with gcd(m, 6) = 1.
inline Rational eisenstein_closed_form(EisClosed which, long n) {
    if (n < 1) throw HypothesisViolation("closed form requires n >= 1");
    long nu2 = ord_p(n, 2), nu3 = ord_p(n, 3);
    long m = n;
    for (int i = 0; i < nu2; ++i) m /= 2;
    for (int i = 0; i < nu3; ++i) m /= 3;
    Integer p2 = pow_int(Integer(2), static_cast<unsigned long>(nu2));
    Integer p3 = pow_int(Integer(3), static_cast<unsigned long>(nu3));
    Rational pre;
    if (which == EisClosed::E1) {
        long sgn = (nu2 + nu3) % 2 == 0 ? 1 : -1;
        Rational a = rat(1, 2);
        a += rat(sgn) * rat(p3, 2) * rat(kronecker(-3, m));
        a += rat(sgn) * rat(p2 * 2) * rat(kronecker(-1, m));
        a += rat(p2 * 2 * p3) * rat(kronecker(3, m));
        pre = a;
        if (nu3 > 0) {
            Rational b = rat(3, 2);
            b += rat(sgn) * rat(p3 * 3, 2) * rat(kronecker(-3, m));
            b += rat(sgn) * rat(3) * rat(p2 * 2) * rat(kronecker(-1, m));
            b += rat(p2 * 2 * p3 * 3) * rat(kronecker(3, m));
            pre -= b;
        }
    } else {
        long P2 = p2.get_si();
        long P3 = p3.get_si();
        Rational a = rat(-1, 2);
        a -= rat(P3, 2) * rat(kronecker(-3, P2 * m) * kronecker(-1, P3));
        a += rat(P2) * rat(kronecker(-3, P2) * kronecker(-1, P3 * m));
        a += rat(P2 * P3) * rat(kronecker(3, m));
        pre = a;
        if (nu3 > 0) {
            long P3m = P3 / 3;  // 3^{nu3-1}
            Rational b = rat(3, 2);
            b -= rat(3 * P3, 2) * rat(kronecker(-3, P2 * m) * kronecker(-1, P3m));
            b += rat(3 * P2) * rat(kronecker(-3, P2) * kronecker(-1, P3m * m));
            b -= rat(P2 * 3 * P3) * rat(kronecker(3, m));
            pre += b;
        }
        if (nu2 > 0) {
            long P2m = P2 / 2;  // 2^{nu2-1}
            Rational c = rat(1);
            c -= rat(P3) * rat(kronecker(-3, P2m * m) * kronecker(-1, P3));
            c += rat(2 * P2) * rat(kronecker(-3, P2m) * kronecker(-1, P3 * m));
            c -= rat(2 * P2 * P3) * rat(kronecker(3, m));
            pre += c;
        }
        if (nu2 > 0 && nu3 > 0) {
            long P2m = P2 / 2, P3m = P3 / 3;
            Rational d = rat(-3);
            d -= rat(3 * P3) * rat(kronecker(-3, P2m * m) * kronecker(-1, P3m));
            d += rat(2 * P2 * 3) * rat(kronecker(-3, P2m) * kronecker(-1, P3m * m));
            d += rat(2 * P2 * 3 * P3) * rat(kronecker(3, m));
            pre += d;
        }
    }
    Rational prod(1);
    for (const auto& [p, e] : factorize(m)) {
        long eps = kronecker(3, p);
        Rational top = rat(1) - pow_rat(rat(eps * p), e + 1);
        Rational bot = rat(1) - rat(eps * p);
        prod *= top / bot;
    }
    return pre * prod;
}

// Divisor-sum definitions of the same two series.  T_{A,B}(M) denotes
// sum_{d | M} chi_A(M/d) chi_B(d) d; both series are rational combinations
// of T at M = n, n/2, n/3, n/6.
namespace detail {

inline std::vector<std::array<long, 4>> eis_divisor_tables(long limit) {
    // columns: T1 = T_{1,12}, T2 = T_{-3,-4}, T3 = T_{-4,-3}, T4 = T_{12,1}
    std::vector<std::array<long, 4>> T(static_cast<std::size_t>(limit) + 1, {0, 0, 0, 0});
    for (long d = 1; d <= limit; ++d) {
        long k12d = kronecker(12, d), km4d = kronecker(-4, d), km3d = kronecker(-3, d);
        for (long t = 1; d * t <= limit; ++t) {
            auto& row = T[static_cast<std::size_t>(d * t)];
            long k12t = kronecker(12, t), km4t = kronecker(-4, t), km3t = kronecker(-3, t);
            row[0] += k12d * d;
            row[1] += km3t * km4d * d;
            row[2] += km4t * km3d * d;
            row[3] += k12t * d;
        }
    }
    return T;
}

}  // namespace detail

inline QExpansion eisenstein_divisor_series(EisClosed which, long limit) {
    if (limit < 1) throw HypothesisViolation("series requires limit >= 1");
    auto T = detail::eis_divisor_tables(limit);
    QExpansion f(0, 0, 24, 24 * (limit + 1));
    f.set_at24(0, QuadScalar(1));
    for (long n = 1; n <= limit; ++n) {
        const auto& Tn = T[static_cast<std::size_t>(n)];
        Rational v(0);
        if (which == EisClosed::E1) {
            v += rat(Tn[0], 2) + rat(Tn[1], 2) + rat(2 * Tn[2]) + rat(2 * Tn[3]);
            if (n % 3 == 0) {
                const auto& Tm = T[static_cast<std::size_t>(n / 3)];
                v += rat(-3 * Tm[0], 2) + rat(9 * Tm[1], 2) + rat(6 * Tm[2]) - rat(18 * Tm[3]);
            }
        } else {
            v += rat(-Tn[0], 2) - rat(Tn[1], 2) + rat(Tn[2]) + rat(Tn[3]);
            if (n % 3 == 0) {
                const auto& Tm = T[static_cast<std::size_t>(n / 3)];
                v += rat(3 * Tm[0], 2) - rat(9 * Tm[1], 2) + rat(3 * Tm[2]) - rat(9 * Tm[3]);
            }
            if (n % 2 == 0) {
                const auto& Tm = T[static_cast<std::size_t>(n / 2)];
                v += rat(Tm[0]) - rat(Tm[1]) + rat(4 * Tm[2]) - rat(4 * Tm[3]);
            }
            if (n % 6 == 0) {
                const auto& Tm = T[static_cast<std::size_t>(n / 6)];
                v += rat(-3 * Tm[0]) - rat(9 * Tm[1]) + rat(12 * Tm[2]) + rat(36 * Tm[3]);
            }
        }
        if (v != 0) f.set_at24(24 * n, QuadScalar(v));
    }
    return f;
}

// ---------------------------------------------------------------------------
// Non-vanishing scans
// ---------------------------------------------------------------------------

enum class ScanTarget { f1, f2 };

inline EtaSpec scan_spec(ScanTarget t) {
    return EtaSpec::parse(t == ScanTarget::f1 ? "1^-1 2^10 3^-1 4^-4" : "1^7 2^-2 3^-1");
}

struct ScanReport {
    std::string target;
    long mod = 3, residue = 1;
    long limit = 0;
    long checked = 0;
    std::vector<long> zeros;
    std::optional<Rational> min_G2;      // over the scanned class above g_floor
    long g_floor = 0;
    long elapsed_ms = 0;
    bool pass = false;
};

inline constexpr long kScanBudget = 2'000'000;

// Expands the target eta-quotient and reports every n in the residue class
// with vanishing coefficient, plus the minimal growth-function value G^2
// encountered above `g_floor`.  G1 pairs with f1 and G2 with f2.  A
// precomputed coefficient block (e.g. loaded from a cache file) may be
// supplied to make large scans resumable.
inline ScanReport scan_nonvanishing(ScanTarget target, long mod, long residue, long limit,
                                    int jobs = 1, long g_floor = -1,
                                    const std::vector<Integer>* precomputed = nullptr) {
    if (limit < 1) throw HypothesisViolation("scan requires limit >= 1");
    if (limit > kScanBudget)
        throw ResourceBudgetExceeded("scan limit " + std::to_string(limit) +
                                     " exceeds the configured budget " +
                                     std::to_string(kScanBudget));
    if (precomputed && static_cast<long>(precomputed->size()) < limit + 1)
        throw HypothesisViolation("precomputed coefficient block shorter than the scan limit");
    auto t0 = std::chrono::steady_clock::now();
    ScanReport rep;
    rep.target = target == ScanTarget::f1 ? "f1" : "f2";
    rep.mod = mod;
    rep.residue = residue;
    rep.limit = limit;
    rep.g_floor = g_floor >= 0 ? g_floor : (target == ScanTarget::f1 ? 1120 : 309400);
    const std::vector<Integer> coeffs =
        precomputed ? *precomputed : detail::c_series_integer(scan_spec(target), limit);
    GrowthG g = target == ScanTarget::f1 ? GrowthG::G1 : GrowthG::G2;
    struct Chunk {
        long checked = 0;
        std::vector<long> zeros;
        std::optional<Rational> min_G2;
    };
    auto chunks = run_chunked<Chunk>(1, limit + 1, jobs, 8192, [&](long a, long b) {
        Chunk ch;
        for (long n = a; n < b; ++n) {
            if (mod > 1 && ((n % mod) + mod) % mod != residue) continue;
            ++ch.checked;
            if (mpz_sgn(coeffs[static_cast<std::size_t>(n)].get_mpz_t()) == 0)
                ch.zeros.push_back(n);
            if (n > rep.g_floor) {
                Rational g2 = growth_G_squared(g, n);
                if (!ch.min_G2 || g2 < *ch.min_G2) ch.min_G2 = g2;
            }
        }
        return ch;
    });
    for (const auto& ch : chunks) {
        rep.checked += ch.checked;
        for (long z : ch.zeros) rep.zeros.push_back(z);
        if (ch.min_G2 && (!rep.min_G2 || *ch.min_G2 < *rep.min_G2)) rep.min_G2 = ch.min_G2;
    }
    rep.pass = rep.zeros.empty();
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

}  // namespace etaq
