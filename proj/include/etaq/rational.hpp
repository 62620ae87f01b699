#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "etaq/errors.hpp"

namespace etaq {

// Exact arbitrary-precision arithmetic is delegated to GMP.  mpq_class keeps
// values canonical (gcd-reduced, positive denominator) through arithmetic;
// the factories below canonicalize raw constructions so the invariant holds
// everywhere.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rat(const Integer& num, const Integer& den = 1) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer pow_int(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational pow_rat(const Rational& base, long e) {
    if (e == 0) return rat(1);
    Rational r;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), a);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), a);
    if (e < 0) {
        if (base == 0) throw DivisionByZero("0 raised to a negative power");
        r = rat(1) / r;
    }
    return r;
}

inline Integer floor_rat(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

// Canonical rendering: "a" for integers, "a/b" otherwise.
inline std::string to_string(const Rational& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational rat_from_string(const std::string& s) {
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw ParseError("invalid rational literal '" + s + "'", 0);
    if (q.get_den() == 0) throw DivisionByZero("rational literal with zero denominator");
    q.canonicalize();
    return q;
}

}  // namespace etaq
