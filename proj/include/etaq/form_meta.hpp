#pragma once

#include <string>

#include "etaq/characters.hpp"
#include "etaq/rational.hpp"

namespace etaq {

// Metadata of a space M_kappa(Gamma_0(N), chi).  Weights are half-integers,
// stored doubled so everything stays in long arithmetic.
struct FormMeta {
    long weight2 = 0;  // 2*kappa
    long level = 1;
    DirichletChar chi;
    bool cuspidal = false;

    Rational weight() const { return rat(weight2, 2); }
    bool half_integral() const { return weight2 % 2 != 0; }

    std::string space_string() const {
        std::string w = half_integral() ? std::to_string(weight2) + "/2"
                                        : std::to_string(weight2 / 2);
        std::string s = cuspidal ? "S_{" : "M_{";
        s += w + "}(Gamma0(" + std::to_string(level) + ")";
        if (!chi.is_trivial()) s += ", " + chi.label();
        s += ")";
        return s;
    }

    friend bool operator==(const FormMeta& x, const FormMeta& y) {
        return x.weight2 == y.weight2 && x.level == y.level && x.chi == y.chi;
    }
};

inline FormMeta make_meta(long weight2, long level, DirichletChar chi, bool cuspidal = false) {
    if (weight2 % 2 != 0 && level % 4 != 0)
        throw HypothesisViolation("half-integral weight requires 4 | level");
    return FormMeta{weight2, level, chi, cuspidal};
}

// Product rule for spaces on a common Gamma_0(N) (levels are joined by lcm):
// two half-integral factors pick up chi_{-4}^{kappa1+kappa2+1}, a
// half-integral and an integral factor pick up chi_{-4}^{kappa3}.
inline FormMeta meta_mul(const FormMeta& f, const FormMeta& g) {
    long level = std::lcm(f.level, g.level);
    long weight2 = f.weight2 + g.weight2;
    DirichletChar chi = f.chi * g.chi;
    if (f.half_integral() && g.half_integral()) {
        long k = (f.weight2 - 1) / 2 + (g.weight2 - 1) / 2 + 1;
        if (k % 2 != 0) chi = chi * DirichletChar::kronecker_char(-4);
    } else if (f.half_integral() != g.half_integral()) {
        long k3 = (f.half_integral() ? g.weight2 : f.weight2) / 2;
        if (k3 % 2 != 0) chi = chi * DirichletChar::kronecker_char(-4);
    }
    return make_meta(weight2, level, chi, f.cuspidal || g.cuspidal);
}

// Rankin-Cohen bracket metadata.  For half-integral inputs kappa_j + 1/2 the
// bracket [f,g]_ell lands in weight kappa1+kappa2+2ell+1 with character
// psi1 psi2 chi_{-4}^{kappa1+kappa2+1}; for integral inputs the weight is
// kappa1+kappa2+2ell with character psi1 psi2.
inline FormMeta meta_rankin_cohen(const FormMeta& f, const FormMeta& g, long ell) {
    long level = std::lcm(f.level, g.level);
    DirichletChar chi = f.chi * g.chi;
    if (f.half_integral() && g.half_integral()) {
        long k = (f.weight2 - 1) / 2 + (g.weight2 - 1) / 2 + 1;
        if (k % 2 != 0) chi = chi * DirichletChar::kronecker_char(-4);
        return make_meta(f.weight2 + g.weight2 + 4 * ell, level, chi, true);
    }
    if (!f.half_integral() && !g.half_integral())
        return make_meta(f.weight2 + g.weight2 + 4 * ell, level, chi, ell > 0);
    throw HypothesisViolation("bracket of mixed integral/half-integral weights not covered");
}

}  // namespace etaq
