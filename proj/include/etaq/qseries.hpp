#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etaq/errors.hpp"
#include "etaq/quad.hpp"
#include "etaq/rational.hpp"

namespace etaq {

// ---------------------------------------------------------------------------
// EtaSpec: a finite product prod_j (q^j;q^j)_inf^{r_j}, the common recipe
// for C-series and eta-quotients.
// ---------------------------------------------------------------------------
struct EtaSpec {
    // (delta, r) pairs, deltas strictly increasing, r nonzero
    std::vector<std::pair<long, long>> factors;

    // Grammar: whitespace-separated `base^exp` tokens, e.g. "1^-1 3^3 4^2".
    static EtaSpec parse(const std::string& text) {
        EtaSpec spec;
        std::size_t i = 0, n = text.size();
        auto skip_ws = [&] {
            while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        };
        auto read_long = [&](bool allow_sign) -> long {
            std::size_t begin = i;
            if (allow_sign && i < n && (text[i] == '-' || text[i] == '+')) ++i;
            std::size_t digits = i;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == digits) throw ParseError("expected an integer", begin);
            return std::stol(text.substr(begin, i - begin));
        };
        skip_ws();
        while (i < n) {
            long delta = read_long(false);
            if (delta < 1) throw ParseError("base must be positive", i);
            if (i >= n || text[i] != '^') throw ParseError("expected '^'", i);
            ++i;
            long r = read_long(true);
            if (r == 0) throw ParseError("exponent must be nonzero", i);
            spec.factors.emplace_back(delta, r);
            skip_ws();
        }
        if (spec.factors.empty()) throw ParseError("empty eta-spec", 0);
        std::sort(spec.factors.begin(), spec.factors.end());
        for (std::size_t k = 1; k < spec.factors.size(); ++k)
            if (spec.factors[k].first == spec.factors[k - 1].first)
                throw ParseError("duplicate base " + std::to_string(spec.factors[k].first), 0);
        return spec;
    }

    std::string to_string() const {
        std::string s;
        for (const auto& [delta, r] : factors) {
            if (!s.empty()) s += ' ';
            s += std::to_string(delta) + "^" + std::to_string(r);
        }
        return s;
    }

    long offset24() const {  // sum delta*r, in 1/24 units
        long s = 0;
        for (const auto& [delta, r] : factors) s += delta * r;
        return s;
    }

    long weight2() const {  // 2*kappa = sum r
        long s = 0;
        for (const auto& [delta, r] : factors) s += r;
        return s;
    }

    Rational weight() const { return rat(weight2(), 2); }
};

// ---------------------------------------------------------------------------
// QExpansion: truncated formal series sum c_k q^{k/24} with exact
// coefficients.  Stored coefficients sit on the arithmetic grid
// k = start24 + i*step24 for 0 <= i < size, with k < trunc24; coefficients
// at k >= trunc24 are unknown, never assumed zero.
// ---------------------------------------------------------------------------
class QExpansion {
public:
    QExpansion(long field_d, long start24, long step24, long trunc24)
        : field_d_(field_d), start24_(start24), step24_(step24), trunc24_(trunc24) {
        if (step24_ < 1) throw HypothesisViolation("grid step must be positive");
        if (start24_ >= trunc24_) throw HypothesisViolation("empty expansion range");
        c_.assign(grid_size(start24_, step24_, trunc24_), QuadScalar());
    }

    static QExpansion constant(const QuadScalar& value, long trunc24) {
        QExpansion f(value.d(), 0, 24, trunc24);
        f.set_at24(0, value);
        return f;
    }

    static QExpansion from_integer_coeffs(std::vector<Integer> coeffs, long field_d = 0) {
        QExpansion f(field_d, 0, 24, 24 * static_cast<long>(coeffs.size()));
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            f.c_[i] = QuadScalar(rat(coeffs[i]));
        return f;
    }

    long field_d() const { return field_d_; }
    long start24() const { return start24_; }
    long step24() const { return step24_; }
    long trunc24() const { return trunc24_; }
    std::size_t size() const { return c_.size(); }
    long exp24(std::size_t i) const { return start24_ + static_cast<long>(i) * step24_; }
    const QuadScalar& coeff(std::size_t i) const { return c_[i]; }
    QuadScalar& coeff(std::size_t i) { return c_[i]; }

    // Exact coefficient of q^{k/24}; off-grid points inside the known range
    // are genuine zeros, points at or beyond trunc24 are unknown.
    const QuadScalar& at24(long k) const {
        static const QuadScalar zero{};
        if (k >= trunc24_)
            throw TruncationExceeded("coefficient q^{" + std::to_string(k) +
                                     "/24} beyond truncation " + std::to_string(trunc24_));
        if (k < start24_ || (k - start24_) % step24_ != 0) return zero;
        return c_[static_cast<std::size_t>((k - start24_) / step24_)];
    }

    // Coefficient of q^n on the integer grid.
    const QuadScalar& at(long n) const { return at24(24 * n); }

    void set_at24(long k, QuadScalar v) {
        if (k < start24_ || k >= trunc24_ || (k - start24_) % step24_ != 0)
            throw HypothesisViolation("exponent off the storage grid");
        if (!v.is_rational() && field_d_ != 0 && v.d() != field_d_)
            throw FieldMismatch("coefficient field differs from the series field");
        c_[static_cast<std::size_t>((k - start24_) / step24_)] = std::move(v);
    }

    bool is_integer_grid() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero() && exp24(i) % 24 != 0) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }

    static long grid_size(long start24, long step24, long trunc24) {
        return (trunc24 - start24 + step24 - 1) / step24;
    }

private:
    long field_d_;
    long start24_, step24_, trunc24_;
    std::vector<QuadScalar> c_;
};

namespace detail {

inline long joint_field_tag(const QExpansion& f, const QExpansion& g) {
    if (f.field_d() == 0) return g.field_d();
    if (g.field_d() == 0 || f.field_d() == g.field_d()) return f.field_d();
    throw FieldMismatch("series over Q(sqrt(" + std::to_string(f.field_d()) +
                        ")) and Q(sqrt(" + std::to_string(g.field_d()) + "))");
}

// Common storage grid covering the union of both supports.
inline long merged_step(const QExpansion& f, const QExpansion& g) {
    long s = std::gcd(f.step24(), g.step24());
    long off = f.start24() - g.start24();
    if (off < 0) off = -off;
    s = std::gcd(s, off);
    return s == 0 ? f.step24() : s;
}

}  // namespace detail

inline QExpansion qx_add(const QExpansion& f, const QExpansion& g) {
    long d = detail::joint_field_tag(f, g);
    long step = detail::merged_step(f, g);
    long start = std::min(f.start24(), g.start24());
    long trunc = std::min(f.trunc24(), g.trunc24());
    if (start >= trunc)
        throw HypothesisViolation("sum has empty known range");
    QExpansion h(d, start, step, trunc);
    for (std::size_t i = 0; i < h.size(); ++i) {
        long k = h.exp24(i);
        QuadScalar v;
        if (k >= f.start24() && (k - f.start24()) % f.step24() == 0 && k < f.trunc24())
            v += f.at24(k);
        if (k >= g.start24() && (k - g.start24()) % g.step24() == 0 && k < g.trunc24())
            v += g.at24(k);
        if (!v.is_zero()) h.set_at24(k, std::move(v));
    }
    return h;
}

inline QExpansion qx_scale(const QExpansion& f, const QuadScalar& s) {
    long d = s.is_rational() ? f.field_d() : (f.field_d() == 0 ? s.d() : f.field_d());
    if (!s.is_rational() && f.field_d() != 0 && s.d() != f.field_d())
        throw FieldMismatch("scalar field differs from the series field");
    QExpansion h(d, f.start24(), f.step24(), f.trunc24());
    if (s.is_zero()) return h;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!f.coeff(i).is_zero()) h.coeff(i) = f.coeff(i) * s;
    return h;
}

inline QExpansion qx_neg(const QExpansion& f) { return qx_scale(f, QuadScalar(-1)); }

inline QExpansion qx_sub(const QExpansion& f, const QExpansion& g) {
    return qx_add(f, qx_neg(g));
}

inline QExpansion qx_mul(const QExpansion& f, const QExpansion& g) {
    long d = detail::joint_field_tag(f, g);
    long step = std::gcd(f.step24(), g.step24());
    long start = f.start24() + g.start24();
    long trunc = std::min(f.start24() + g.trunc24(), g.start24() + f.trunc24());
    if (start >= trunc)
        throw HypothesisViolation("product has empty known range");
    QExpansion h(d, start, step, trunc);
    // Cauchy product with zero-skipping; sparse factors (theta, Pochhammer)
    // contribute only their support.
    for (std::size_t i = 0; i < f.size(); ++i) {
        const QuadScalar& fi = f.coeff(i);
        if (fi.is_zero()) continue;
        long kf = f.exp24(i);
        if (kf >= trunc - g.start24()) break;
        for (std::size_t j = 0; j < g.size(); ++j) {
            const QuadScalar& gj = g.coeff(j);
            if (gj.is_zero()) continue;
            long k = kf + g.exp24(j);
            if (k >= trunc) break;
            std::size_t idx = static_cast<std::size_t>((k - start) / step);
            h.coeff(idx) += fi * gj;
        }
    }
    return h;
}

inline QExpansion qx_invert(const QExpansion& f) {
    std::size_t lead = 0;
    while (lead < f.size() && f.coeff(lead).is_zero()) ++lead;
    if (lead != 0 || f.coeff(0).is_zero())
        throw NonInvertibleLeadingTerm("leading stored coefficient must be nonzero");
    const QuadScalar c0 = f.coeff(0);
    const QuadScalar c0inv = c0.inverse();
    long s = f.start24(), step = f.step24();
    long len = static_cast<long>(f.size());
    // g = f^{-1} starts at -s and is known strictly below trunc(f) - 2s
    QExpansion h(f.field_d(), -s, step, f.trunc24() - 2 * s);
    // normalized recurrence on the step grid: g_m = -(1/c0) sum_{k>=1} f_k g_{m-k}
    std::vector<QuadScalar> g(static_cast<std::size_t>(len));
    g[0] = c0inv;
    for (long m = 1; m < len; ++m) {
        QuadScalar acc;
        for (long k = 1; k <= m; ++k) {
            const QuadScalar& fk = f.coeff(static_cast<std::size_t>(k));
            if (fk.is_zero()) continue;
            acc += fk * g[static_cast<std::size_t>(m - k)];
        }
        if (!acc.is_zero()) g[static_cast<std::size_t>(m)] = -(c0inv * acc);
    }
    for (long m = 0; m < len; ++m)
        if (!g[static_cast<std::size_t>(m)].is_zero())
            h.set_at24(-s + m * step, std::move(g[static_cast<std::size_t>(m)]));
    return h;
}

inline QExpansion qx_pow(const QExpansion& f, long e) {
    if (e < 0) return qx_pow(qx_invert(f), -e);
    if (e == 0) {
        long span = f.trunc24() - f.start24();
        return QExpansion::constant(QuadScalar(1), span >= 24 ? span : 24);
    }
    // binary exponentiation; truncation windows only widen with powers
    QExpansion base = f;
    std::optional<QExpansion> acc;
    long k = e;
    while (true) {
        if (k & 1) acc = acc ? qx_mul(*acc, base) : base;
        k >>= 1;
        if (k == 0) break;
        base = qx_mul(base, base);
    }
    return *acc;
}

// Normalized derivative (1/2pi i) d/dz: sends c q^{k/24} to (k/24) c q^{k/24}.
inline QExpansion qx_theta_derivative(const QExpansion& f) {
    QExpansion h(f.field_d(), f.start24(), f.step24(), f.trunc24());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.coeff(i).is_zero()) continue;
        h.coeff(i) = f.coeff(i) * QuadScalar(rat(f.exp24(i), 24));
    }
    return h;
}

struct Mismatch {
    long k24;
    QuadScalar lhs, rhs;
};

// First disagreement of two expansions on their common known range,
// optionally capped at exponent <= cap24.
inline std::optional<Mismatch> qx_first_mismatch(const QExpansion& f, const QExpansion& g,
                                                 long cap24, long* compared = nullptr) {
    long lo = std::min(f.start24(), g.start24());
    long hi = std::min({f.trunc24(), g.trunc24(), cap24 + 1});
    long step = detail::merged_step(f, g);
    long count = 0;
    for (long k = lo; k < hi; k += step) {
        bool on_f = k >= f.start24() && (k - f.start24()) % f.step24() == 0;
        bool on_g = k >= g.start24() && (k - g.start24()) % g.step24() == 0;
        if (!on_f && !on_g) continue;
        QuadScalar a = on_f ? f.at24(k) : QuadScalar();
        QuadScalar b = on_g ? g.at24(k) : QuadScalar();
        ++count;
        if (!(a == b)) {
            if (compared) *compared = count;
            return Mismatch{k, a, b};
        }
    }
    if (compared) *compared = count;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Pochhammer factors and C-series via the pentagonal number theorem.
// ---------------------------------------------------------------------------

// Support of (q^j;q^j)_inf below `bound` (exclusive), exponents in integer-n
// units: j*k(3k-1)/2 with sign (-1)^k, sorted ascending.
inline std::vector<std::pair<long, int>> pentagonal_support(long j, long bound) {
    std::vector<std::pair<long, int>> s;
    s.emplace_back(0, 1);
    for (long k = 1;; ++k) {
        long g1 = j * k * (3 * k - 1) / 2;
        long g2 = j * k * (3 * k + 1) / 2;
        int sign = (k % 2 == 0) ? 1 : -1;
        bool any = false;
        if (g1 < bound) {
            s.emplace_back(g1, sign);
            any = true;
        }
        if (g2 < bound) {
            s.emplace_back(g2, sign);
            any = true;
        }
        if (!any) break;
    }
    std::sort(s.begin(), s.end());
    return s;
}

// (q^j;q^j)_inf as an expansion on the integer grid.
inline QExpansion pochhammer(long j, long trunc24) {
    if (j < 1) throw HypothesisViolation("pochhammer requires j >= 1");
    if (trunc24 <= 0 || trunc24 % 24 != 0)
        throw HypothesisViolation("pochhammer truncation must be a positive multiple of 24");
    long n_bound = trunc24 / 24;
    QExpansion f(0, 0, 24, trunc24);
    for (const auto& [e, sign] : pentagonal_support(j, n_bound))
        f.set_at24(24 * e, QuadScalar(sign));
    return f;
}

namespace detail {

// In-place multiplication of a dense integer coefficient block by
// (q^j;q^j)_inf: descending index order keeps the reads on original values.
inline void pent_multiply_inplace(std::vector<Integer>& a, long j) {
    const auto support = pentagonal_support(j, static_cast<long>(a.size()));
    for (long n = static_cast<long>(a.size()) - 1; n >= 0; --n) {
        Integer& an = a[static_cast<std::size_t>(n)];
        for (std::size_t t = 1; t < support.size(); ++t) {
            long e = support[t].first;
            if (e > n) break;
            const Integer& src = a[static_cast<std::size_t>(n - e)];
            if (mpz_sgn(src.get_mpz_t()) == 0) continue;
            if (support[t].second > 0)
                an += src;
            else
                an -= src;
        }
    }
}

// In-place exact division by (q^j;q^j)_inf; the divisor has unit constant
// term, so quotients of integer series stay integral.
inline void pent_divide_inplace(std::vector<Integer>& a, long j) {
    const auto support = pentagonal_support(j, static_cast<long>(a.size()));
    for (long n = 0; n < static_cast<long>(a.size()); ++n) {
        Integer& an = a[static_cast<std::size_t>(n)];
        for (std::size_t t = 1; t < support.size(); ++t) {
            long e = support[t].first;
            if (e > n) break;
            const Integer& src = a[static_cast<std::size_t>(n - e)];
            if (mpz_sgn(src.get_mpz_t()) == 0) continue;
            if (support[t].second > 0)
                an -= src;
            else
                an += src;
        }
    }
}

// Dense integer coefficients of prod (q^d;q^d)^{r_d} through q^limit.
// Multiplications and divisions are interleaved so intermediate series stay
// close to the final weight; unbalanced orders grow partition-sized
// coefficients.
inline std::vector<Integer> c_series_integer(const EtaSpec& spec, long limit) {
    std::vector<long> mul_units, div_units;
    bool more = true;
    for (int round = 0; more; ++round) {
        more = false;
        for (const auto& [delta, r] : spec.factors) {
            if (std::abs(r) > round) {
                (r > 0 ? mul_units : div_units).push_back(delta);
                if (std::abs(r) > round + 1) more = true;
            }
        }
    }
    std::vector<Integer> a(static_cast<std::size_t>(limit) + 1);
    a[0] = 1;
    std::size_t mi = 0, di = 0;
    while (mi < mul_units.size() || di < div_units.size()) {
        if (mi < mul_units.size()) pent_multiply_inplace(a, mul_units[mi++]);
        if (di < div_units.size()) pent_divide_inplace(a, div_units[di++]);
    }
    return a;
}

}  // namespace detail

// Integer-grid expansion of prod (q^delta;q^delta)^r through q^limit
// (C-normalization: no q-power prefactor).
inline QExpansion c_series(const EtaSpec& spec, long limit) {
    if (limit < 1) throw HypothesisViolation("c_series requires limit >= 1");
    return QExpansion::from_integer_coeffs(detail::c_series_integer(spec, limit));
}

}  // namespace etaq
