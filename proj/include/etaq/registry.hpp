#pragma once

#include <optional>
#include <string>
#include <vector>

#include "etaq/verify.hpp"

namespace etaq {

namespace detail {

// series of closed-form newform coefficients, the lattice-sum route
inline QExpansion newform_closed_series(NewformId id, long limit) {
    QExpansion f(newform_field(id), 24, 24, 24 * (limit + 1));
    for (long n = 1; n <= limit; ++n) {
        QuadScalar c = newform_coeff_closed(id, n);
        if (!c.is_zero()) f.set_at24(24 * n, std::move(c));
    }
    return f;
}

// sum_{n>=0} (-1)^n r_{(1,2)}(8n+3)/4 * q^{n + 3/8}, by brute-force counts
inline QExpansion r12_signed_series(long limit) {
    QExpansion f(0, 9, 24, 9 + 24 * (limit + 1));
    for (long n = 0; n <= limit; ++n) {
        long r = rep_diagonal({1, 2}, 8 * n + 3);
        if (r == 0) continue;
        f.set_at24(24 * n + 9, QuadScalar(rat(n % 2 == 0 ? r : -r, 4)));
    }
    return f;
}

// sum_n (-1)^n r_{(1,1,1)}(n) q^n, by brute-force counts
inline QExpansion r111_signed_series(long limit) {
    QExpansion f(0, 0, 24, 24 * (limit + 1));
    for (long n = 0; n <= limit; ++n) {
        long r = rep_diagonal({1, 1, 1}, n);
        if (r == 0) continue;
        f.set_at24(24 * n, QuadScalar(rat(n % 2 == 0 ? r : -r)));
    }
    return f;
}

inline QExpansion h12_u2(long limit) { return op_U(hurwitz_combo(1, 2, 2 * limit), 2); }

// the Eisenstein-module route for the script E1 / E2 combinations
inline QExpansion eis_combo_E1(long limit) {
    auto chi = [](long D) { return DirichletChar::kronecker_char(D); };
    auto E = [&](long D1, long D2) { return eisenstein(2, chi(D1), chi(D2), limit); };
    QExpansion base = qx_add(
        qx_add(qx_scale(E(1, 12), QuadScalar(rat(1, 4))),
               qx_scale(E(-3, -4), QuadScalar(rat(1, 4)))),
        qx_add(E(-4, -3), E(12, 1)));
    QExpansion v3 = qx_add(
        qx_add(qx_scale(op_V(E(1, 12), 3), QuadScalar(rat(-3, 4))),
               qx_scale(op_V(E(-3, -4), 3), QuadScalar(rat(9, 4)))),
        qx_add(qx_scale(op_V(E(-4, -3), 3), QuadScalar(3)),
               qx_scale(op_V(E(12, 1), 3), QuadScalar(-9))));
    return qx_add(base, v3);
}

inline QExpansion eis_combo_E2(long limit) {
    auto chi = [](long D) { return DirichletChar::kronecker_char(D); };
    auto E = [&](long D1, long D2) { return eisenstein(2, chi(D1), chi(D2), limit); };
    QExpansion base = qx_add(
        qx_add(qx_scale(E(1, 12), QuadScalar(rat(-1, 4))),
               qx_scale(E(-3, -4), QuadScalar(rat(-1, 4)))),
        qx_add(qx_scale(E(-4, -3), QuadScalar(rat(1, 2))),
               qx_scale(E(12, 1), QuadScalar(rat(1, 2)))));
    QExpansion v3 = qx_add(
        qx_add(qx_scale(op_V(E(1, 12), 3), QuadScalar(rat(3, 4))),
               qx_scale(op_V(E(-3, -4), 3), QuadScalar(rat(-9, 4)))),
        qx_add(qx_scale(op_V(E(-4, -3), 3), QuadScalar(rat(3, 2))),
               qx_scale(op_V(E(12, 1), 3), QuadScalar(rat(-9, 2)))));
    QExpansion v2 = qx_add(
        qx_add(qx_scale(op_V(E(1, 12), 2), QuadScalar(rat(1, 2))),
               qx_scale(op_V(E(-3, -4), 2), QuadScalar(rat(-1, 2)))),
        qx_add(qx_scale(op_V(E(-4, -3), 2), QuadScalar(2)),
               qx_scale(op_V(E(12, 1), 2), QuadScalar(-2))));
    QExpansion v6 = qx_add(
        qx_add(qx_scale(op_V(E(1, 12), 6), QuadScalar(rat(-3, 2))),
               qx_scale(op_V(E(-3, -4), 6), QuadScalar(rat(-9, 2)))),
        qx_add(qx_scale(op_V(E(-4, -3), 6), QuadScalar(6)),
               qx_scale(op_V(E(12, 1), 6), QuadScalar(18))));
    return qx_add(qx_add(base, v3), qx_add(v2, v6));
}

inline QExpansion closed_series_rational(EisClosed which, long limit) {
    QExpansion f(0, 0, 24, 24 * (limit + 1));
    f.set_at24(0, QuadScalar(1));
    for (long n = 1; n <= limit; ++n) {
        Rational v = eisenstein_closed_form(which, n);
        if (v != 0) f.set_at24(24 * n, QuadScalar(v));
    }
    return f;
}

inline QExpansion zero_series(long limit) { return QExpansion(0, 0, 24, 24 * (limit + 1)); }

}  // namespace detail

// The identity inventory.  Each record names the certifying space; PASS at
// the Sturm bound of that space is an identity certificate, and every
// record is additionally compared through extra_check_limit.
//
// Orientation conventions are pinned by machine comparison against the
// eta-quotient sides, which are unambiguous: the weight-3 bracket identity
// reads Theta_2 - Theta_3 = 2[Theta|V_9, Theta]_1, the F1 cusp part pairs
// (1 - sqrt2 i) with g1 and (1 + sqrt2 i) with g2, and the F2 decomposition
// carries the two V_2-oldform terms alongside the same pairing.
inline std::vector<IdentityRecord> registry() {
    std::vector<IdentityRecord> recs;
    auto chi = [](long D) { return DirichletChar::kronecker_char(D); };
    const QuadScalar i_over_2s2(rat(0), rat(1, 4), -2);   // i/(2 sqrt2)
    const QuadScalar i_over_s2(rat(0), rat(1, 2), -2);    // i/sqrt2
    const QuadScalar i_over_3s2(rat(0), rat(1, 6), -2);   // i/(3 sqrt2)
    const QuadScalar one_over_2s2(rat(0), rat(1, 4), 2);  // 1/(2 sqrt2)
    const QuadScalar one_over_4s2(rat(0), rat(1, 8), 2);  // 1/(4 sqrt2)
    const QuadScalar i_half(rat(0), rat(1, 2), -1);       // i/2
    const QuadScalar one_ps2i(rat(1), rat(1), -2);        // 1 + sqrt2 i
    const QuadScalar one_ms2i(rat(1), rat(-1), -2);       // 1 - sqrt2 i

    auto add = [&](std::string id, std::string desc, FormMeta meta, long per_index,
                   long offset, SeriesRecipe lhs, SeriesRecipe rhs, bool negative = false) {
        IdentityRecord r;
        r.id = std::move(id);
        r.description = std::move(desc);
        r.meta = meta;
        r.grid_per_index = per_index;
        r.grid_offset = offset;
        r.negative_control = negative;
        r.lhs = std::move(lhs);
        r.rhs = std::move(rhs);
        recs.push_back(std::move(r));
    };

    auto g = [](NewformId id) {
        return [id](long limit) { return newform_expand(id, limit); };
    };
    auto g_closed = [](NewformId id) {
        return [id](long limit) { return detail::newform_closed_series(id, limit); };
    };
    auto eta = [](const char* spec) {
        EtaSpec s = EtaSpec::parse(spec);
        return [s](long limit) { return eta_expand(s, limit); };
    };

    // --- Jacobi theta as an eta-quotient -----------------------------------
    add("THETA-POCH", "Theta(z) equals the Pochhammer quotient (q2;q2)^5 / ((q;q)^2 (q4;q4)^2)",
        make_meta(1, 4, chi(1)), 24, 0,
        [](long limit) { return theta_jacobi(limit); }, eta("1^-2 2^5 4^-2"));

    // --- sieve identities generating S_2(Gamma0(36), chi_12) ----------------
    FormMeta m36 = make_meta(4, 36, chi(12), true);
    add("L31-A", "(g1 + g2)/2 = g1|S_{3,1}", m36, 24, 0,
        [g](long limit) {
            return qx_scale(qx_add(g(NewformId::g1)(limit), g(NewformId::g2)(limit)),
                            QuadScalar(rat(1, 2)));
        },
        [g](long limit) { return op_sieve(g(NewformId::g1)(limit), 3, 1); });
    add("L31-B", "(g1 - g2)/2 = g1|S_{3,2}", m36, 24, 0,
        [g](long limit) {
            return qx_scale(qx_sub(g(NewformId::g1)(limit), g(NewformId::g2)(limit)),
                            QuadScalar(rat(1, 2)));
        },
        [g](long limit) { return op_sieve(g(NewformId::g1)(limit), 3, 2); });
    add("L31-C", "g1|S_{3,0} = 0", m36, 24, 0,
        [g](long limit) { return op_sieve(g(NewformId::g1)(limit), 3, 0); },
        [](long limit) { return detail::zero_series(limit); });

    // --- dual-route checks: theta-product series vs closed lattice sums -----
    add("L32-G1", "g1 series route = closed-form coefficient route", m36, 24, 0,
        g(NewformId::g1), g_closed(NewformId::g1));
    add("L32-G2", "g2 series route = closed-form coefficient route", m36, 24, 0,
        g(NewformId::g2), g_closed(NewformId::g2));

    // --- eta(9z)^3 eta(12z)^2 / eta(3z) in terms of g1 and g3 ---------------
    FormMeta m144 = make_meta(4, 144, chi(12));
    add("L52-A", "eta(9z)^3 eta(12z)^2/eta(3z) = -(i/sqrt2) g1|S_{12,2} + (i/sqrt2) g1|S_{12,8} - (i/(3 sqrt2)) g3|S_{6,5}",
        m144, 24, 0, eta("3^-1 9^3 12^2"),
        [g, i_over_s2, i_over_3s2](long limit) {
            QExpansion g1 = g(NewformId::g1)(limit);
            QExpansion g3 = g(NewformId::g3)(limit);
            return qx_add(qx_add(qx_scale(op_sieve(g1, 12, 2), -i_over_s2),
                                 qx_scale(op_sieve(g1, 12, 8), i_over_s2)),
                          qx_scale(op_sieve(g3, 6, 5), -i_over_3s2));
        });
    add("L43-G3", "g3 series route = closed-form coefficient route",
        make_meta(4, 144, chi(12), true), 24, 0, g(NewformId::g3), g_closed(NewformId::g3));

    // --- eta(3z)^4 eta(12z)^4 / eta(6z)^2 = -(1/2) g4|S_{3,2} ----------------
    FormMeta m36w3 = make_meta(6, 36, chi(-4));
    add("L52-B", "eta(3z)^4 eta(12z)^4/eta(6z)^2 = -(1/2) g4|S_{3,2}", m36w3, 24, 0,
        eta("3^4 6^-2 12^4"),
        [g](long limit) {
            return qx_scale(op_sieve(g(NewformId::g4)(limit), 3, 2), QuadScalar(rat(-1, 2)));
        });

    // --- the Theta_1..Theta_3 decomposition of g4 ---------------------------
    add("L47-A", "g4 series route = closed-form coefficient route", m36w3, 24, 0,
        g(NewformId::g4), g_closed(NewformId::g4));
    add("L47-B", "g4|S_{3,0} = 0", m36w3, 24, 0,
        [g](long limit) { return op_sieve(g(NewformId::g4)(limit), 3, 0); },
        [](long limit) { return detail::zero_series(limit); });
    add("L47-C", "g4|S_{3,1} = Theta_2/2 - Theta_3/2", m36w3, 24, 0,
        [g](long limit) { return op_sieve(g(NewformId::g4)(limit), 3, 1); },
        [](long limit) {
            return qx_scale(qx_sub(theta_aux(ThetaAux::T2, limit), theta_aux(ThetaAux::T3, limit)),
                            QuadScalar(rat(1, 2)));
        });
    add("L47-D", "g4|S_{3,2} = -Theta_1/4", m36w3, 24, 0,
        [g](long limit) { return op_sieve(g(NewformId::g4)(limit), 3, 2); },
        [](long limit) { return qx_scale(theta_aux(ThetaAux::T1, limit), QuadScalar(rat(-1, 4))); });
    add("L47-RC", "Theta_2 - Theta_3 = 2 [Theta|V_9, Theta]_1 (weight-1/2 bracket)", m36w3, 24, 0,
        [](long limit) {
            return qx_sub(theta_aux(ThetaAux::T2, limit), theta_aux(ThetaAux::T3, limit));
        },
        [](long limit) {
            QExpansion Th = theta_jacobi(limit);
            QExpansion Th9 = theta_unary_scaled(1, 0, 9, limit);
            return qx_scale(rankin_cohen(Th9, 1, Th, 1, 1), QuadScalar(2));
        });

    // --- eta(z) eta(4z)^3 / eta(2z)^2 as a signed r_{(1,2)} series ----------
    // Certified after the z -> 8z normalization, where both sides live in
    // M_1(Gamma0(256), chi_{-4}); space index m corresponds to grid 3m.
    add("L95-A", "eta(z) eta(4z)^3/eta(2z)^2 = (1/4) sum (-1)^n r_{(1,2)}(8n+3) q^{n+3/8}",
        make_meta(2, 256, chi(-4)), 3, 0, eta("1^1 2^-2 4^3"),
        [](long limit) { return detail::r12_signed_series(limit); });

    // --- the level-256 weight-2 newform g5 ----------------------------------
    add("L95-B", "eta(8z) eta(16z)^2 eta(32z) = (1/(2 sqrt2)) g5|S_{8,3}",
        make_meta(4, 256, chi(1)), 24, 0, eta("8^1 16^2 32^1"),
        [g, one_over_2s2](long limit) {
            return qx_scale(op_sieve(g(NewformId::g5)(limit), 8, 3), one_over_2s2);
        });
    add("L54-G5", "g5 series route = closed-form coefficient route",
        make_meta(4, 256, chi(1), true), 24, 0, g(NewformId::g5), g_closed(NewformId::g5));

    // --- the level-64 weight-2 newform g6 ------------------------------------
    add("L95-C", "eta(8z)^3 eta(32z)^2/eta(16z) = -(i/2) g6|S_{8,3}",
        make_meta(4, 64, chi(8)), 24, 0, eta("8^3 16^-1 32^2"),
        [g, i_half](long limit) {
            return qx_scale(op_sieve(g(NewformId::g6)(limit), 8, 3), -i_half);
        });
    add("L57-G6", "g6 series route = closed-form coefficient route",
        make_meta(4, 64, chi(8), true), 24, 0, g(NewformId::g6), g_closed(NewformId::g6));

    // --- the level-128 weight-3 newform g7 -----------------------------------
    add("L95-D", "eta(8z)^3 eta(16z)^3 = (1/(4 sqrt2)) g7|S_{8,3}",
        make_meta(6, 128, chi(-8)), 24, 0, eta("8^3 16^3"),
        [g, one_over_4s2](long limit) {
            return qx_scale(op_sieve(g(NewformId::g7)(limit), 8, 3), one_over_4s2);
        });
    add("L510-G7", "g7 series route = closed-form coefficient route",
        make_meta(6, 128, chi(-8), true), 24, 0, g(NewformId::g7), g_closed(NewformId::g7));

    // --- the level-32 weight-3 newform g8 ------------------------------------
    add("L95-E", "eta(8z)^7 eta(32z)^2/eta(16z)^3 = (1/2) g8|S_{8,3}",
        make_meta(6, 64, chi(-8)), 24, 0, eta("8^7 16^-3 32^2"),
        [g](long limit) {
            return qx_scale(op_sieve(g(NewformId::g8)(limit), 8, 3), QuadScalar(rat(1, 2)));
        });
    add("L513-G8", "g8 series route = closed-form coefficient route",
        make_meta(6, 32, chi(-8), true), 24, 0, g(NewformId::g8), g_closed(NewformId::g8));

    // --- Eisenstein layer ----------------------------------------------------
    FormMeta m36e = make_meta(4, 36, chi(12));
    add("E1-DECOMP", "script E1 divisor sums = Eisenstein module combination", m36e, 24, 0,
        [](long limit) { return eisenstein_divisor_series(EisClosed::E1, limit); },
        [](long limit) { return detail::eis_combo_E1(limit); });
    add("E1-CLOSED", "script E1 divisor sums = multiplicative closed form", m36e, 24, 0,
        [](long limit) { return eisenstein_divisor_series(EisClosed::E1, limit); },
        [](long limit) { return detail::closed_series_rational(EisClosed::E1, limit); });
    FormMeta m72 = make_meta(4, 72, chi(12));
    add("E2-DECOMP", "script E2 divisor sums = Eisenstein module combination", m72, 24, 0,
        [](long limit) { return eisenstein_divisor_series(EisClosed::E2, limit); },
        [](long limit) { return detail::eis_combo_E2(limit); });
    add("E2-CLOSED", "script E2 divisor sums = multiplicative closed form", m72, 24, 0,
        [](long limit) { return eisenstein_divisor_series(EisClosed::E2, limit); },
        [](long limit) { return detail::closed_series_rational(EisClosed::E2, limit); });

    add("F1-ID", "f1 = E1 - 2(1 - sqrt2 i) g1 - 2(1 + sqrt2 i) g2", m144, 24, 0,
        eta("1^-1 2^10 3^-1 4^-4"),
        [g, one_ms2i, one_ps2i](long limit) {
            QExpansion e1 = eisenstein_divisor_series(EisClosed::E1, limit);
            return qx_sub(qx_sub(e1, qx_scale(g(NewformId::g1)(limit),
                                              QuadScalar(2) * one_ms2i)),
                          qx_scale(g(NewformId::g2)(limit), QuadScalar(2) * one_ps2i));
        });
    add("F2-ID",
        "f2 = E2 - 4(1 - sqrt2 i) g1 - 4(1 + sqrt2 i) g2 + (16 + 8 sqrt2 i) g1|V_2 + (16 - 8 sqrt2 i) g2|V_2",
        m72, 24, 0, eta("1^7 2^-2 3^-1"),
        [g, one_ms2i, one_ps2i](long limit) {
            QExpansion e2 = eisenstein_divisor_series(EisClosed::E2, limit);
            QExpansion g1 = g(NewformId::g1)(limit);
            QExpansion g2 = g(NewformId::g2)(limit);
            const QuadScalar d1(rat(16), rat(8), -2), d2(rat(16), rat(-8), -2);
            QExpansion cusp = qx_add(
                qx_add(qx_scale(g1, QuadScalar(-4) * one_ms2i),
                       qx_scale(g2, QuadScalar(-4) * one_ps2i)),
                qx_add(qx_scale(op_V(g1, 2), d1), qx_scale(op_V(g2, 2), d2)));
            return qx_add(e2, cusp);
        });

    // --- Hurwitz class-number layer ------------------------------------------
    FormMeta m16h = make_meta(3, 16, chi(1));
    add("L133-A", "eta(z)^2 eta(2z)^3/eta(4z)^2 = H_{1,2}|U_2|(12 S_{4,0} - 4 S_{4,1} - 4 S_{4,2} + 12 S_{4,3})",
        m16h, 24, 0, eta("1^2 2^3 4^-2"),
        [](long limit) {
            QExpansion h = detail::h12_u2(limit);
            return qx_add(qx_add(qx_scale(op_sieve(h, 4, 0), QuadScalar(12)),
                                 qx_scale(op_sieve(h, 4, 1), QuadScalar(-4))),
                          qx_add(qx_scale(op_sieve(h, 4, 2), QuadScalar(-4)),
                                 qx_scale(op_sieve(h, 4, 3), QuadScalar(12))));
        });
    add("THREESQ-THETA", "Theta^3 = 12 H_{1,2}|U_2", make_meta(3, 8, chi(1)), 24, 0,
        [](long limit) {
            QExpansion Th = theta_jacobi(limit);
            return qx_mul(qx_mul(Th, Th), Th);
        },
        [](long limit) { return qx_scale(detail::h12_u2(limit), QuadScalar(12)); });
    add("THREESQ-ETA", "eta(z)^6/eta(2z)^3 = sum (-1)^n r_{(1,1,1)}(n) q^n", m16h, 24, 0,
        eta("1^6 2^-3"), [](long limit) { return detail::r111_signed_series(limit); });

    // --- negative controls: corrupted identities that must FAIL --------------
    add("NEG-L31A-SIGN", "corrupted: (g1 + g2)/2 = -g1|S_{3,1}", m36, 24, 0,
        [g](long limit) {
            return qx_scale(qx_add(g(NewformId::g1)(limit), g(NewformId::g2)(limit)),
                            QuadScalar(rat(1, 2)));
        },
        [g](long limit) { return qx_neg(op_sieve(g(NewformId::g1)(limit), 3, 1)); }, true);
    add("NEG-L52B-SIGN", "corrupted: eta(3z)^4 eta(12z)^4/eta(6z)^2 = +(1/2) g4|S_{3,2}",
        m36w3, 24, 0, eta("3^4 6^-2 12^4"),
        [g](long limit) {
            return qx_scale(op_sieve(g(NewformId::g4)(limit), 3, 2), QuadScalar(rat(1, 2)));
        }, true);
    add("NEG-THREESQ-11", "corrupted: Theta^3 = 11 H_{1,2}|U_2", make_meta(3, 8, chi(1)), 24, 0,
        [](long limit) {
            QExpansion Th = theta_jacobi(limit);
            return qx_mul(qx_mul(Th, Th), Th);
        },
        [](long limit) { return qx_scale(detail::h12_u2(limit), QuadScalar(11)); }, true);

    return recs;
}

inline std::optional<IdentityRecord> find_identity(const std::string& id) {
    for (auto& r : registry())
        if (r.id == id) return r;
    return std::nullopt;
}

}  // namespace etaq
