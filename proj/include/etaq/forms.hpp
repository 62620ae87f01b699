#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "etaq/characters.hpp"
#include "etaq/form_meta.hpp"
#include "etaq/operators.hpp"
#include "etaq/qseries.hpp"

namespace etaq {

// ---------------------------------------------------------------------------
// Eta-quotients
// ---------------------------------------------------------------------------

// prod eta(delta z)^{r_delta} as a q-expansion: the C-series shifted by the
// prefactor exponent sum(delta*r)/24.  Coefficients run through the
// (limit)-th term of the C-series.
inline QExpansion eta_expand(const EtaSpec& spec, long limit) {
    QExpansion c = c_series(spec, limit);
    long off = spec.offset24();
    QExpansion h(0, off, 24, off + c.trunc24());
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!c.coeff(i).is_zero()) h.set_at24(off + c.exp24(i), c.coeff(i));
    return h;
}

struct EtaMetaResult {
    std::optional<FormMeta> meta;
    std::string rejection;  // names the violated condition on failure

    bool ok() const { return meta.has_value(); }
};

// Modularity bookkeeping for an eta-quotient on Gamma_0(N): integer weight,
// sum(delta r) and sum((N/delta) r) both 0 mod 24, character chi_{(-1)^k s}
// with s = prod delta^{r_delta} reduced to its squarefree kernel.
inline EtaMetaResult eta_meta(const EtaSpec& spec, long N) {
    for (const auto& [delta, r] : spec.factors)
        if (N % delta != 0)
            throw DeltaNotDividingLevel("delta = " + std::to_string(delta) +
                                        " does not divide N = " + std::to_string(N));
    EtaMetaResult out;
    long w2 = spec.weight2();
    if (w2 % 2 != 0) {
        out.rejection = "weight " + std::to_string(w2) + "/2 is not an integer";
        return out;
    }
    long s1 = spec.offset24();
    if (((s1 % 24) + 24) % 24 != 0) {
        out.rejection = "sum delta*r = " + std::to_string(s1) + " is not 0 mod 24";
        return out;
    }
    long s2 = 0;
    for (const auto& [delta, r] : spec.factors) s2 += (N / delta) * r;
    if (((s2 % 24) + 24) % 24 != 0) {
        out.rejection = "sum (N/delta)*r = " + std::to_string(s2) + " is not 0 mod 24";
        return out;
    }
    // squarefree kernel of prod delta^{r}: primes with odd total exponent
    std::map<long, long> prime_exp;
    for (const auto& [delta, r] : spec.factors)
        for (const auto& [p, e] : factorize(delta)) prime_exp[p] += static_cast<long>(e) * r;
    long kernel = 1;
    for (const auto& [p, e] : prime_exp)
        if (e % 2 != 0) kernel *= p;
    long kappa = w2 / 2;
    long sign = (kappa % 2 == 0) ? 1 : -1;
    out.meta = make_meta(w2, N, DirichletChar::kronecker_char(sign * kernel));
    return out;
}

// ---------------------------------------------------------------------------
// Theta series
// ---------------------------------------------------------------------------

// Unary theta theta(chi_D, j, z) = sum_{n in Z} chi_D(n) n^j q^{n^2};
// the n = 0 term contributes only for j = 0 and trivial chi.
inline QExpansion theta_unary(long D, int j, long limit) {
    if (limit < 1) throw HypothesisViolation("theta_unary requires limit >= 1");
    if (j != 0 && j != 1) throw HypothesisViolation("theta_unary requires j in {0,1}");
    DirichletChar chi = DirichletChar::kronecker_char(D);
    if (chi.is_even() != (j == 0))
        throw ParityMismatch(chi.label() + " is " + (chi.is_even() ? "even" : "odd") +
                             ", incompatible with j = " + std::to_string(j));
    QExpansion f(0, 0, 24, 24 * (limit + 1));
    if (j == 0 && chi.is_trivial()) f.set_at24(0, QuadScalar(1));
    for (long n = 1; n * n <= limit; ++n) {
        int c = chi(n);
        if (c == 0) continue;
        long v = (j == 0) ? 2L * c : 2L * c * n;
        f.set_at24(24 * n * n, QuadScalar(rat(v)));
    }
    return f;
}

// Jacobi's Theta(z) = theta(chi_1, 0, z).
inline QExpansion theta_jacobi(long limit) { return theta_unary(1, 0, limit); }

// theta(chi_D, j, scale*z), expanded directly through q^limit.
inline QExpansion theta_unary_scaled(long D, int j, long scale, long limit) {
    long m = (limit + scale) / scale;  // enough terms before dilation
    return op_V(theta_unary(D, j, m), scale);
}

// ---------------------------------------------------------------------------
// Eisenstein series
// ---------------------------------------------------------------------------

// E_{kappa,chi,psi} = 1_{chi=chi_1} L(1-kappa,psi) + 1_{psi=chi_1} 1_{kappa=1} L(0,chi)
//                    + 2 sum_n sum_{d|n} chi(n/d) psi(d) d^{kappa-1} q^n.
inline QExpansion eisenstein(long kappa, const DirichletChar& chi, const DirichletChar& psi,
                             long limit) {
    if (kappa < 1) throw HypothesisViolation("eisenstein requires kappa >= 1");
    if (limit < 1) throw HypothesisViolation("eisenstein requires limit >= 1");
    int sign = (kappa % 2 == 0) ? 1 : -1;
    if (chi.parity() * psi.parity() != sign)
        throw ParityObstruction("chi(-1)psi(-1) != (-1)^kappa for " + chi.label() + ", " +
                                psi.label() + ", kappa = " + std::to_string(kappa));
    std::vector<Integer> acc(static_cast<std::size_t>(limit) + 1);
    for (long d = 1; d <= limit; ++d) {
        int pd = psi(d);
        if (pd == 0) continue;
        Integer w = Integer(pd) * pow_int(Integer(d), static_cast<unsigned long>(kappa - 1));
        for (long t = 1; d * t <= limit; ++t) {
            int ct = chi(t);
            if (ct == 0) continue;
            if (ct > 0)
                acc[static_cast<std::size_t>(d * t)] += w;
            else
                acc[static_cast<std::size_t>(d * t)] -= w;
        }
    }
    QExpansion f(0, 0, 24, 24 * (limit + 1));
    Rational constant(0);
    if (chi.is_trivial()) constant += l_value(static_cast<unsigned>(kappa), psi);
    if (psi.is_trivial() && kappa == 1) constant += l_value(1, chi);
    if (constant != 0) f.set_at24(0, QuadScalar(constant));
    for (long n = 1; n <= limit; ++n) {
        const Integer& a = acc[static_cast<std::size_t>(n)];
        if (mpz_sgn(a.get_mpz_t()) != 0) f.set_at24(24 * n, QuadScalar(rat(2 * a)));
    }
    return f;
}

// The holomorphic quasi-Eisenstein combination E_2 - d E_2|V_d, with
// constant term (1-d) L(-1, chi_1) and coefficients 2 sigma_1(n) - 2d sigma_1(n/d).
inline QExpansion eis_quasi_combo(long d, long limit) {
    if (d < 2) throw HypothesisViolation("eis_quasi_combo requires d >= 2");
    QExpansion f(0, 0, 24, 24 * (limit + 1));
    f.set_at24(0, QuadScalar(rat(1 - d) * l_value(2, DirichletChar::trivial())));
    std::vector<long> sigma(static_cast<std::size_t>(limit) + 1, 0);
    for (long e = 1; e <= limit; ++e)
        for (long m = e; m <= limit; m += e) sigma[static_cast<std::size_t>(m)] += e;
    for (long n = 1; n <= limit; ++n) {
        long v = 2 * sigma[static_cast<std::size_t>(n)];
        if (n % d == 0) v -= 2 * d * sigma[static_cast<std::size_t>(n / d)];
        if (v != 0) f.set_at24(24 * n, QuadScalar(rat(v)));
    }
    return f;
}

// ---------------------------------------------------------------------------
// Hurwitz class numbers
// ---------------------------------------------------------------------------

// H(D): weighted class count of positive-definite binary quadratic forms of
// discriminant -D.  H(0) = -1/12 (Zagier's convention), H(D) = 0 for
// D = 1, 2 mod 4.  Reduced-form enumeration: |b| <= a <= c, b >= 0 when
// |b| = a or a = c; weights 1/2 at (a,0,a) and 1/3 at (a,a,a).
inline Rational hurwitz(long D) {
    if (D < 0) throw HypothesisViolation("hurwitz requires D >= 0");
    if (D == 0) return rat(-1, 12);
    if (D % 4 == 1 || D % 4 == 2) return rat(0);
    static std::map<long, Rational> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(D);
        if (it != cache.end()) return it->second;
    }
    Rational h(0);
    for (long b = D % 2; 3 * b * b <= D; b += 2) {
        long t4 = (b * b + D) / 4;
        for (long a = std::max(b, 1L); a * a <= t4; ++a) {
            if (t4 % a != 0) continue;
            long c = t4 / a;
            if (b == 0 || b == a || a == c) {
                if (b == 0 && a == c)
                    h += rat(1, 2);
                else if (b == a && a == c)
                    h += rat(1, 3);
                else
                    h += 1;
            } else {
                h += 2;  // (a,b,c) and (a,-b,c) are distinct classes
            }
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(D, h);
    return h;
}

// H_{l1,l2} = H | (U_{l1 l2} - l2 U_{l1} V_{l2}): coefficient at n is
// H(l1 l2 n) - l2 H(l1 n / l2), the second term present only when l2 | n.
inline QExpansion hurwitz_combo(long l1, long l2, long limit) {
    if (l1 < 1 || l2 < 1 || std::gcd(l1, l2) != 1)
        throw HypothesisViolation("hurwitz_combo requires coprime positive l1, l2");
    if (squarefree_part(l2) != l2)
        throw HypothesisViolation("hurwitz_combo requires l2 squarefree");
    QExpansion f(0, 0, 24, 24 * (limit + 1));
    for (long n = 0; n <= limit; ++n) {
        Rational v = hurwitz(l1 * l2 * n);
        if (n % l2 == 0) v -= rat(l2) * hurwitz(l1 * n / l2);
        if (v != 0) f.set_at24(24 * n, QuadScalar(v));
    }
    return f;
}

inline FormMeta hurwitz_combo_meta(long l1, long l2) {
    return make_meta(3, 4 * radical(l1) * l2, DirichletChar::kronecker_char(4 * l1 * l2));
}

// ---------------------------------------------------------------------------
// Representation counts
// ---------------------------------------------------------------------------

// r_{(a1,...,ak)}(n) = #{x in Z^k : sum a_i x_i^2 = n}, by bounded nested
// enumeration.  This is the brute-force oracle other routes are checked
// against, so it stays elementary on purpose.
inline long rep_diagonal(const std::vector<long>& coeffs, long n) {
    if (n < 0) return 0;
    if (coeffs.empty()) return n == 0 ? 1 : 0;
    if (coeffs.size() == 1) {
        long a = coeffs[0];
        if (n % a != 0) return 0;
        long m = n / a;
        if (m == 0) return 1;
        return is_perfect_square(m) ? 2 : 0;
    }
    std::vector<long> rest(coeffs.begin() + 1, coeffs.end());
    long a = coeffs[0];
    long count = rep_diagonal(rest, n);  // x_1 = 0
    for (long x = 1; a * x * x <= n; ++x) count += 2 * rep_diagonal(rest, n - a * x * x);
    return count;
}

// ---------------------------------------------------------------------------
// Auxiliary two-variable theta series Theta_1 .. Theta_7
// ---------------------------------------------------------------------------

enum class ThetaAux { T1 = 1, T2, T3, T4, T5, T6, T7 };

inline QExpansion theta_aux(ThetaAux which, long limit) {
    if (limit < 1) throw HypothesisViolation("theta_aux requires limit >= 1");
    std::vector<Rational> acc(static_cast<std::size_t>(limit) + 1, rat(0));
    auto add = [&](long e, long v) {
        if (e <= limit && v != 0) acc[static_cast<std::size_t>(e)] += rat(v);
    };
    long bound = isqrt(limit);
    switch (which) {
        case ThetaAux::T1:  // 2 sum (-3/(n1 n2)) n1 n2 q^{n1^2+n2^2}
            for (long n1 = -bound; n1 <= bound; ++n1)
                for (long n2 = -bound; n2 <= bound; ++n2) {
                    long e = n1 * n1 + n2 * n2;
                    if (e > limit || n1 == 0 || n2 == 0) continue;
                    add(e, 2 * kronecker(-3, n1 * n2) * n1 * n2);
                }
            break;
        case ThetaAux::T2:  // sum n1^2 q^{n1^2+9n2^2}
            for (long n1 = -bound; n1 <= bound; ++n1)
                for (long n2 = -bound; n2 <= bound; ++n2) {
                    long e = n1 * n1 + 9 * n2 * n2;
                    if (e <= limit) add(e, n1 * n1);
                }
            break;
        case ThetaAux::T3:  // 9 sum n2^2 q^{n1^2+9n2^2}
            for (long n1 = -bound; n1 <= bound; ++n1)
                for (long n2 = -bound; n2 <= bound; ++n2) {
                    long e = n1 * n1 + 9 * n2 * n2;
                    if (e <= limit) add(e, 9 * n2 * n2);
                }
            break;
        case ThetaAux::T4:  // sum (-4/(m1 m2)) m1 m2 q^{m1^2+2m2^2}
            for (long m1 = -bound; m1 <= bound; ++m1)
                for (long m2 = -bound; m2 <= bound; ++m2) {
                    long e = m1 * m1 + 2 * m2 * m2;
                    if (e > limit || m1 == 0 || m2 == 0) continue;
                    add(e, kronecker(-4, m1 * m2) * m1 * m2);
                }
            break;
        case ThetaAux::T5:  // sum_{2 nmid m1} (-1)^{m2} (m1^2-8m2^2) q^{m1^2+8m2^2}
            for (long m1 = -bound; m1 <= bound; ++m1) {
                if (m1 % 2 == 0) continue;
                for (long m2 = -bound; m2 <= bound; ++m2) {
                    long e = m1 * m1 + 8 * m2 * m2;
                    if (e > limit) continue;
                    long v = m1 * m1 - 8 * m2 * m2;
                    add(e, (m2 % 2 == 0) ? v : -v);
                }
            }
            break;
        case ThetaAux::T6:  // sum_{2 nmid n1} (n1^2-8n2^2) q^{n1^2+8n2^2}
            for (long n1 = -bound; n1 <= bound; ++n1) {
                if (n1 % 2 == 0) continue;
                for (long n2 = -bound; n2 <= bound; ++n2) {
                    long e = n1 * n1 + 8 * n2 * n2;
                    if (e <= limit) add(e, n1 * n1 - 8 * n2 * n2);
                }
            }
            break;
        case ThetaAux::T7:  // sum_{2 nmid n1, n2} (n1^2-2n2^2) q^{n1^2+2n2^2}
            for (long n1 = -bound; n1 <= bound; ++n1) {
                if (n1 % 2 == 0) continue;
                for (long n2 = -bound; n2 <= bound; ++n2) {
                    if (n2 % 2 == 0) continue;
                    long e = n1 * n1 + 2 * n2 * n2;
                    if (e <= limit) add(e, n1 * n1 - 2 * n2 * n2);
                }
            }
            break;
    }
    QExpansion f(0, 0, 24, 24 * (limit + 1));
    for (long e = 0; e <= limit; ++e)
        if (acc[static_cast<std::size_t>(e)] != 0)
            f.set_at24(24 * e, QuadScalar(acc[static_cast<std::size_t>(e)]));
    return f;
}

// ---------------------------------------------------------------------------
// Rankin-Cohen bracket
// ---------------------------------------------------------------------------

// [f,g]_ell = sum_r (-1)^r w_r f^{(r)} g^{(ell-r)} with the normalized
// derivative and Gamma-ratio weights
//   w_r = [prod_{t=r}^{ell-1}(kappa1+t)] [prod_{t=ell-r}^{ell-1}(kappa2+t)] / (r!(ell-r)!),
// rational even for half-integral weights.  Weights are passed doubled.
inline QExpansion rankin_cohen(const QExpansion& f, long k1_weight2, const QExpansion& g,
                               long k2_weight2, long ell) {
    if (ell < 0) throw HypothesisViolation("rankin_cohen requires ell >= 0");
    Rational kappa1 = rat(k1_weight2, 2), kappa2 = rat(k2_weight2, 2);
    auto rising = [](const Rational& x, long from, long to) {  // prod_{t=from}^{to-1} (x+t)
        Rational p(1);
        for (long t = from; t < to; ++t) p *= x + rat(t);
        return p;
    };
    std::optional<QExpansion> acc;
    std::vector<QExpansion> df{f}, dg{g};
    for (long r = 1; r <= ell; ++r) {
        df.push_back(qx_theta_derivative(df.back()));
        dg.push_back(qx_theta_derivative(dg.back()));
    }
    std::vector<Rational> fact(static_cast<std::size_t>(ell) + 1);
    fact[0] = rat(1);
    for (long r = 1; r <= ell; ++r) fact[static_cast<std::size_t>(r)] =
        fact[static_cast<std::size_t>(r - 1)] * rat(r);
    for (long r = 0; r <= ell; ++r) {
        Rational w = rising(kappa1, r, ell) * rising(kappa2, ell - r, ell) /
                     (fact[static_cast<std::size_t>(r)] * fact[static_cast<std::size_t>(ell - r)]);
        if (r % 2 != 0) w = -w;
        QExpansion term = qx_scale(
            qx_mul(df[static_cast<std::size_t>(r)], dg[static_cast<std::size_t>(ell - r)]),
            QuadScalar(w));
        acc = acc ? qx_add(*acc, term) : term;
    }
    return *acc;
}

// ---------------------------------------------------------------------------
// The eight newforms g1..g8
// ---------------------------------------------------------------------------

enum class NewformId { g1 = 1, g2, g3, g4, g5, g6, g7, g8 };

inline const char* newform_name(NewformId id) {
    static const char* names[] = {"g1", "g2", "g3", "g4", "g5", "g6", "g7", "g8"};
    return names[static_cast<int>(id) - 1];
}

inline std::optional<NewformId> newform_from_name(const std::string& s) {
    for (int i = 1; i <= 8; ++i)
        if (s == newform_name(static_cast<NewformId>(i))) return static_cast<NewformId>(i);
    return std::nullopt;
}

inline FormMeta newform_meta(NewformId id) {
    auto chi = [](long D) { return DirichletChar::kronecker_char(D); };
    switch (id) {
        case NewformId::g1: return make_meta(4, 36, chi(12), true);
        case NewformId::g2: return make_meta(4, 36, chi(12), true);
        case NewformId::g3: return make_meta(4, 144, chi(12), true);
        case NewformId::g4: return make_meta(6, 36, chi(-4), true);
        case NewformId::g5: return make_meta(4, 256, DirichletChar::trivial(), true);
        case NewformId::g6: return make_meta(4, 64, chi(8), true);
        case NewformId::g7: return make_meta(6, 128, chi(-8), true);
        case NewformId::g8: return make_meta(6, 32, chi(-8), true);
    }
    throw HypothesisViolation("unknown newform");
}

// Coefficient field Q(sqrt(d)) of each form; 0 marks rational coefficients.
inline long newform_field(NewformId id) {
    switch (id) {
        case NewformId::g1:
        case NewformId::g2:
        case NewformId::g3: return -2;
        case NewformId::g4: return 0;
        case NewformId::g5: return 2;
        case NewformId::g6: return -1;
        case NewformId::g7: return 2;
        case NewformId::g8: return 0;
    }
    return 0;
}

// Series route: each form assembled from unary theta products, sieving and
// the auxiliary lattice thetas.  The scalar i/(2 sqrt 2) is sqrt(-2)/4,
// i/sqrt2 is sqrt(-2)/2, and i sqrt2 is sqrt(-2).
inline QExpansion newform_expand(NewformId id, long limit) {
    if (limit < 1) throw HypothesisViolation("newform_expand requires limit >= 1");
    const QuadScalar half(rat(1, 2));
    switch (id) {
        case NewformId::g1:
        case NewformId::g2: {
            QuadScalar s(rat(0), rat(1, 4), -2);  // i/(2 sqrt 2)
            if (id == NewformId::g2) s = -s;
            QExpansion Th = theta_jacobi(limit);
            QExpansion Th9 = theta_unary_scaled(1, 0, 9, limit);
            QExpansion th3 = theta_unary(-3, 1, limit);
            return qx_add(qx_scale(qx_mul(qx_sub(Th, Th9), th3), s),
                          qx_scale(qx_mul(th3, Th9), half));
        }
        case NewformId::g3: {
            QExpansion A = qx_mul(theta_unary_scaled(-3, 1, 4, limit), theta_jacobi(limit));
            QExpansion B = qx_mul(theta_unary(-3, 1, limit), theta_unary_scaled(1, 0, 4, limit));
            QuadScalar is2(rat(0), rat(1, 2), -2);   // i/sqrt2
            QuadScalar is22(rat(0), rat(1, 4), -2);  // i/(2 sqrt 2)
            return qx_add(
                qx_add(op_sieve(A, 12, 1), qx_scale(op_sieve(B, 12, 1), half)),
                qx_add(qx_scale(op_sieve(A, 12, 5), is2), qx_scale(op_sieve(B, 12, 5), is22)));
        }
        case NewformId::g4:
            return qx_add(qx_scale(theta_aux(ThetaAux::T1, limit), QuadScalar(rat(-1, 4))),
                          qx_scale(qx_sub(theta_aux(ThetaAux::T2, limit),
                                          theta_aux(ThetaAux::T3, limit)),
                                   half));
        case NewformId::g5: {
            QuadScalar inv_s2(rat(0), rat(1, 2), 2);  // 1/sqrt2
            return qx_add(
                qx_scale(qx_mul(theta_unary(-8, 1, limit), theta_unary_scaled(1, 0, 8, limit)),
                         half),
                qx_scale(qx_mul(theta_unary(8, 0, limit), theta_unary_scaled(-4, 1, 2, limit)),
                         inv_s2));
        }
        case NewformId::g6: {
            QExpansion C = qx_mul(theta_unary(-4, 1, limit), theta_unary_scaled(1, 0, 2, limit));
            QuadScalar i_half(rat(0), rat(1, 2), -1);  // i/2
            return qx_add(qx_scale(op_sieve(C, 8, 1), half),
                          qx_scale(op_sieve(C, 8, 3), i_half));
        }
        case NewformId::g7:
            return qx_add(qx_scale(theta_aux(ThetaAux::T4, limit), QuadScalar::sqrt_of(2)),
                          qx_scale(theta_aux(ThetaAux::T5, limit), half));
        case NewformId::g8:
            return qx_scale(qx_sub(theta_aux(ThetaAux::T6, limit), theta_aux(ThetaAux::T7, limit)),
                            half);
    }
    throw HypothesisViolation("unknown newform");
}

namespace detail {

// sum over positive (x,y) with a x^2 + b y^2 = n of term(x, y)
template <typename F>
inline void for_pos_lattice(long a, long b, long n, F&& term) {
    for (long x = 1; a * x * x < n; ++x) {
        long rem = n - a * x * x;
        if (rem % b != 0) continue;
        long y2 = rem / b;
        if (y2 <= 0 || !is_perfect_square(y2)) continue;
        term(x, isqrt(y2));
    }
}

}  // namespace detail

// gamma_1(n): the integer normalization of c_1(n) (divided by i sqrt2 on
// n = 2 mod 3), via its three-case closed form.
inline Rational gamma1_closed(long n) {
    if (n < 1) throw HypothesisViolation("gamma1 requires n >= 1");
    if (n % 3 == 0) return rat(0);
    Rational acc(0);
    if (n % 3 == 2) {
        detail::for_pos_lattice(1, 1, n, [&](long n1, long n2) {
            (void)n1;
            acc += rat(kronecker(-3, n2) * n2);
        });
        return acc;
    }
    if (is_perfect_square(n)) {
        long r = isqrt(n);
        acc += rat(kronecker(-3, r) * r);
    }
    detail::for_pos_lattice(1, 9, n, [&](long n1, long n2) {
        (void)n2;
        acc += rat(2 * kronecker(-3, n1) * n1);
    });
    return acc;
}

// Closed-form route: the case-split lattice sums for the n-th coefficient,
// independent of the series assembly above.
inline QuadScalar newform_coeff_closed(NewformId id, long n) {
    if (n < 1) throw HypothesisViolation("newform_coeff_closed requires n >= 1");
    switch (id) {
        case NewformId::g1:
        case NewformId::g2: {
            // (+-) i/(2 sqrt2) sum_{n1^2+n2^2=n, 3 nmid n1} chi_{-3}(n2) n2
            //  + 1/2 sum_{n1^2+9n2^2=n, 3 nmid n1} chi_{-3}(n1) n1, over Z^2
            long b = isqrt(n);
            long sa = 0, sb = 0;
            for (long n1 = -b; n1 <= b; ++n1) {
                if (n1 % 3 == 0) continue;
                long rem = n - n1 * n1;
                if (rem < 0) continue;
                if (is_perfect_square(rem)) {
                    long r = isqrt(rem);
                    if (r == 0)
                        sa += 0;  // chi(0) n2 = 0
                    else
                        sa += kronecker(-3, r) * r + kronecker(-3, -r) * (-r);
                }
                if (rem % 9 == 0 && is_perfect_square(rem / 9)) {
                    long r = isqrt(rem / 9);
                    int copies = (r == 0) ? 1 : 2;
                    sb += copies * kronecker(-3, n1) * n1;
                }
            }
            QuadScalar first(rat(0), rat(sa, 4), -2);  // i/(2 sqrt2) * sa
            if (id == NewformId::g2) first = -first;
            return first + QuadScalar(rat(sb, 2));
        }
        case NewformId::g3: {
            long m = ((n % 12) + 12) % 12;
            if (m == 1) {
                Rational acc(0);
                if (is_perfect_square(n)) {
                    long r = isqrt(n);
                    acc += rat(kronecker(-3, r) * r);
                }
                detail::for_pos_lattice(4, 9, n, [&](long m1, long) {
                    acc += rat(4 * kronecker(-3, m1) * m1);
                });
                detail::for_pos_lattice(1, 36, n, [&](long m1, long) {
                    acc += rat(2 * kronecker(-3, m1) * m1);
                });
                return QuadScalar(acc);
            }
            if (m == 5) {
                long s = 0;
                detail::for_pos_lattice(4, 1, n, [&](long m1, long) {
                    s += 2 * kronecker(-3, m1) * m1;
                });
                detail::for_pos_lattice(1, 4, n, [&](long m1, long) {
                    s += kronecker(-3, m1) * m1;
                });
                return QuadScalar(rat(0), rat(s), -2);  // s * i sqrt2
            }
            return QuadScalar();
        }
        case NewformId::g4: {
            if (n % 3 == 0) return QuadScalar();
            long s = 0;
            if (n % 3 == 1) {
                if (is_perfect_square(n)) s += n;
                detail::for_pos_lattice(1, 9, n, [&](long n1, long n2) {
                    s += 2 * (n1 * n1 - 9 * n2 * n2);
                });
            } else {
                detail::for_pos_lattice(1, 1, n, [&](long n1, long n2) {
                    s -= 2 * kronecker(-3, n1 * n2) * n1 * n2;
                });
            }
            return QuadScalar(rat(s));
        }
        case NewformId::g5: {
            long m = n % 8;
            if (m == 1) {
                long s = 0;
                if (is_perfect_square(n)) {
                    long r = isqrt(n);
                    s += kronecker(-2, r) * r;
                }
                detail::for_pos_lattice(1, 8, n, [&](long n1, long) {
                    s += 2 * kronecker(-2, n1) * n1;
                });
                return QuadScalar(rat(s));
            }
            if (m == 3) {
                long s = 0;
                detail::for_pos_lattice(1, 2, n, [&](long n1, long n2) {
                    s += kronecker(2, n1) * kronecker(-4, n2) * n2;
                });
                return QuadScalar(rat(0), rat(2 * s), 2);  // 2 sqrt2 * s
            }
            return QuadScalar();
        }
        case NewformId::g6: {
            long m = n % 8;
            if (m != 1 && m != 3) return QuadScalar();
            long s = 0;
            if (m == 1 && is_perfect_square(n)) {
                long r = isqrt(n);
                s += kronecker(-1, r) * r;
            }
            detail::for_pos_lattice(1, 2, n, [&](long m1, long) {
                s += 2 * kronecker(-1, m1) * m1;
            });
            if (m == 1) return QuadScalar(rat(s));
            return QuadScalar(rat(0), rat(s), -1);  // i * s
        }
        case NewformId::g7: {
            long m = n % 8;
            if (m == 1) {
                long s = 0;
                if (is_perfect_square(n)) s += n;
                detail::for_pos_lattice(1, 8, n, [&](long m1, long m2) {
                    long v = m1 * m1 - 8 * m2 * m2;
                    s += 2 * ((m2 % 2 == 0) ? v : -v);
                });
                return QuadScalar(rat(s));
            }
            if (m == 3) {
                long s = 0;
                detail::for_pos_lattice(1, 2, n, [&](long m1, long m2) {
                    s += kronecker(-1, m1 * m2) * m1 * m2;
                });
                return QuadScalar(rat(0), rat(4 * s), 2);  // 4 sqrt2 * s
            }
            return QuadScalar();
        }
        case NewformId::g8: {
            long m = n % 8;
            long s = 0;
            if (m == 1) {
                if (is_perfect_square(n)) s += n;
                detail::for_pos_lattice(1, 8, n, [&](long m1, long m2) {
                    s += 2 * (m1 * m1 - 8 * m2 * m2);
                });
                return QuadScalar(rat(s));
            }
            if (m == 3) {
                detail::for_pos_lattice(1, 2, n, [&](long m1, long m2) {
                    s -= 2 * (m1 * m1 - 2 * m2 * m2);
                });
                return QuadScalar(rat(s));
            }
            return QuadScalar();
        }
    }
    throw HypothesisViolation("unknown newform");
}

}  // namespace etaq
