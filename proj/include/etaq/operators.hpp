#pragma once

#include <string>

#include "etaq/form_meta.hpp"
#include "etaq/primes.hpp"
#include "etaq/qseries.hpp"

namespace etaq {

// ---------------------------------------------------------------------------
// Coefficient-level operators: U (index compression), V (index dilation),
// sieving to a residue class, and the Hecke operator T_p.
// ---------------------------------------------------------------------------

namespace detail {

inline long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long ceil_div(long a, long b) { return -floor_div(-a, b); }

inline void require_integer_grid(const QExpansion& f, const char* op) {
    if (!f.is_integer_grid())
        throw FractionalGrid(std::string(op) + " requires an integer-grid expansion");
}

}  // namespace detail

// f|U_ell: coefficient at n is c(ell*n).
inline QExpansion op_U(const QExpansion& f, long ell) {
    if (ell < 1) throw HypothesisViolation("U_ell requires ell >= 1");
    detail::require_integer_grid(f, "U operator");
    long n_lo = detail::ceil_div(detail::ceil_div(f.start24(), 24), ell);
    long n_hi = detail::ceil_div(f.trunc24(), 24 * ell);  // exclusive
    if (n_hi <= n_lo) n_hi = n_lo + 1;
    QExpansion h(f.field_d(), 24 * n_lo, 24, 24 * n_hi);
    for (long n = n_lo; n < n_hi; ++n) {
        long k = 24 * ell * n;
        if (k < f.start24() || k >= f.trunc24()) continue;
        const QuadScalar& c = f.at24(k);
        if (!c.is_zero()) h.set_at24(24 * n, c);
    }
    return h;
}

// f|V_ell = f(ell*z): exponents dilate by ell.
inline QExpansion op_V(const QExpansion& f, long ell) {
    if (ell < 1) throw HypothesisViolation("V_ell requires ell >= 1");
    QExpansion h(f.field_d(), ell * f.start24(), ell * f.step24(), ell * f.trunc24());
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!f.coeff(i).is_zero()) h.set_at24(ell * f.exp24(i), f.coeff(i));
    return h;
}

// f|S_{M,m}: keeps coefficients with index congruent to m mod M.
inline QExpansion op_sieve(const QExpansion& f, long M, long m) {
    if (M < 1 || m < 0 || m >= M) throw HypothesisViolation("sieve requires 0 <= m < M");
    detail::require_integer_grid(f, "sieving operator");
    QExpansion h(f.field_d(), f.start24(), f.step24(), f.trunc24());
    for (std::size_t i = 0; i < f.size(); ++i) {
        long k = f.exp24(i);
        if (k % 24 != 0) continue;
        long n = k / 24;
        if (((n % M) + M) % M != m) continue;
        if (!f.coeff(i).is_zero()) h.set_at24(k, f.coeff(i));
    }
    return h;
}

// f|T_p for integral weight kappa: coefficient at n is
// c(pn) + chi(p) p^{kappa-1} c(n/p), with c(n/p) = 0 unless p | n.
inline QExpansion op_hecke(const QExpansion& f, long p, long kappa, const DirichletChar& chi) {
    if (!is_prime(p)) throw HypothesisViolation("Hecke operator requires a prime index");
    if (kappa < 1) throw HypothesisViolation("Hecke operator requires kappa >= 1");
    detail::require_integer_grid(f, "Hecke operator");
    if (f.start24() < 0)
        throw HypothesisViolation("Hecke operator acts on expansions supported on n >= 0");
    QuadScalar twist(rat(chi(p)) * rat(pow_int(Integer(p), static_cast<unsigned long>(kappa - 1))));
    long n_hi = detail::ceil_div(f.trunc24(), 24 * p);  // c(pn) known for n < n_hi
    if (n_hi < 1) n_hi = 1;
    QExpansion h(f.field_d(), 0, 24, 24 * n_hi);
    for (long n = 0; n < n_hi; ++n) {
        QuadScalar v;
        long k = 24 * p * n;
        if (k >= f.start24() && k < f.trunc24()) v += f.at24(k);
        if (!twist.is_zero() && n % p == 0) {
            long k2 = 24 * (n / p);
            if (k2 >= f.start24() && k2 < f.trunc24()) v += twist * f.at24(k2);
        }
        if (!v.is_zero()) h.set_at24(24 * n, std::move(v));
    }
    return h;
}

// ---------------------------------------------------------------------------
// OpDescriptor and the metadata bookkeeping of the operator lemmas.
// ---------------------------------------------------------------------------

struct OpDescriptor {
    enum class Kind { U, V, Sieve, Hecke };
    Kind kind;
    long a = 0;  // ell for U/V, M for Sieve, p for Hecke
    long b = 0;  // m for Sieve

    static OpDescriptor U(long ell) { return {Kind::U, ell, 0}; }
    static OpDescriptor V(long ell) { return {Kind::V, ell, 0}; }
    static OpDescriptor Sieve(long M, long m) {
        if (m < 0 || m >= M) throw HypothesisViolation("sieve requires 0 <= m < M");
        return {Kind::Sieve, M, m};
    }
    static OpDescriptor Hecke(long p) {
        if (!is_prime(p)) throw HypothesisViolation("Hecke operator requires a prime");
        return {Kind::Hecke, p, 0};
    }

    // Serialization: "U:2", "V:9", "S:12:5", "T:7".
    std::string to_string() const {
        switch (kind) {
            case Kind::U: return "U:" + std::to_string(a);
            case Kind::V: return "V:" + std::to_string(a);
            case Kind::Sieve: return "S:" + std::to_string(a) + ":" + std::to_string(b);
            case Kind::Hecke: return "T:" + std::to_string(a);
        }
        return {};
    }
};

// Space bookkeeping for the operator table.  The table is total over the
// cases with a proven level/character rule and refuses to invent levels
// elsewhere: an invented level would silently weaken a Sturm certificate
// downstream.
inline FormMeta meta_transform(const OpDescriptor& op, const FormMeta& meta) {
    const bool half = meta.half_integral();
    switch (op.kind) {
        case OpDescriptor::Kind::U: {
            if (!half)
                throw HypothesisViolation(
                    "U-operator metadata is only tabulated for half-integral weight");
            long delta = op.a;
            long level = 4 * std::lcm(meta.level / 4, radical(delta));
            DirichletChar chi = meta.chi * DirichletChar::kronecker_char(4 * delta);
            return make_meta(meta.weight2, level, chi, meta.cuspidal);
        }
        case OpDescriptor::Kind::V: {
            long delta = op.a;
            DirichletChar chi =
                half ? meta.chi * DirichletChar::kronecker_char(4 * delta) : meta.chi;
            return make_meta(meta.weight2, meta.level * delta, chi, meta.cuspidal);
        }
        case OpDescriptor::Kind::Sieve: {
            long M = op.a;
            if (24 % M != 0)
                throw HypothesisViolation("sieving metadata requires M | 24 (M=" +
                                          std::to_string(M) + ")");
            if (half && M % 4 == 2)
                throw HypothesisViolation(
                    "half-integral sieving requires M not congruent to 2 mod 4");
            long level = std::lcm(std::lcm(meta.level, M * M), M * meta.chi.conductor());
            return make_meta(meta.weight2, level, meta.chi, meta.cuspidal);
        }
        case OpDescriptor::Kind::Hecke: {
            if (half)
                throw HypothesisViolation(
                    "half-integral Hecke operators are outside the tabulated lemmas");
            return meta;
        }
    }
    throw HypothesisViolation("unknown operator");
}

}  // namespace etaq
