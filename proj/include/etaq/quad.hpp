#pragma once

#include <cstdlib>
#include <string>

#include "etaq/errors.hpp"
#include "etaq/rational.hpp"

namespace etaq {

// An element a + b*sqrt(d) of the quadratic field Q(sqrt(d)), d squarefree.
// d == 0 is the pure-rational tag; the representation is canonical: whenever
// b vanishes the tag is dropped, so equality is plain memberwise equality.
class QuadScalar {
public:
    QuadScalar() : a_(0), b_(0), d_(0) {}
    QuadScalar(long n) : a_(rat(n)), b_(0), d_(0) {}  // NOLINT(runtime/explicit)
    QuadScalar(Rational a) : a_(std::move(a)), b_(0), d_(0) {}  // NOLINT

    QuadScalar(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
        if (b_ == 0) {
            d_ = 0;
        } else if (d_ == 0 || d_ == 1) {
            throw FieldMismatch("sqrt coefficient requires a field tag d not in {0,1}");
        }
    }

    static QuadScalar sqrt_of(long d) { return QuadScalar(rat(0), rat(1), d); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    long d() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return d_ == 0; }

    QuadScalar conj() const { return QuadScalar(a_, -b_, d_); }

    // a^2 - d*b^2; rational and multiplicative.
    Rational norm() const { return a_ * a_ - rat(d_) * b_ * b_; }

    friend bool operator==(const QuadScalar& x, const QuadScalar& y) {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const QuadScalar& x, const QuadScalar& y) { return !(x == y); }

    QuadScalar operator-() const { return QuadScalar(-a_, -b_, d_); }

    friend QuadScalar operator+(const QuadScalar& x, const QuadScalar& y) {
        long d = joint_field(x, y);
        return QuadScalar(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend QuadScalar operator-(const QuadScalar& x, const QuadScalar& y) { return x + (-y); }

    friend QuadScalar operator*(const QuadScalar& x, const QuadScalar& y) {
        long d = joint_field(x, y);
        // (a1 + b1 s)(a2 + b2 s) = a1 a2 + d b1 b2 + (a1 b2 + b1 a2) s
        return QuadScalar(x.a_ * y.a_ + rat(d) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d);
    }

    QuadScalar inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        Rational n = norm();
        // norm vanishes only at 0 for squarefree d (sqrt(d) irrational)
        return QuadScalar(a_ / n, -b_ / n, d_);
    }

    friend QuadScalar operator/(const QuadScalar& x, const QuadScalar& y) {
        return x * y.inverse();
    }

    QuadScalar& operator+=(const QuadScalar& y) { return *this = *this + y; }
    QuadScalar& operator-=(const QuadScalar& y) { return *this = *this - y; }
    QuadScalar& operator*=(const QuadScalar& y) { return *this = *this * y; }

    // Sign of the real embedding with sqrt(d) > 0.  Only meaningful for
    // d >= 0; tested exactly by comparing a^2 against d*b^2.
    int sign_real() const {
        if (d_ < 0) throw FieldMismatch("sign of an imaginary-field element");
        int sa = sgn(a_), sb = sgn(b_);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        Rational aa = a_ * a_, dbb = rat(d_) * b_ * b_;
        if (aa == dbb) return 0;  // impossible for squarefree d, kept for totality
        return aa > dbb ? sa : sb;
    }

    // "a" / "a/b" for rationals, "a/b + c/e*sqrt(d)" otherwise.
    std::string to_string() const {
        if (d_ == 0) return etaq::to_string(a_);
        std::string bs = etaq::to_string(b_);
        if (bs[0] == '-')
            return etaq::to_string(a_) + " - " + bs.substr(1) + "*sqrt(" + std::to_string(d_) + ")";
        return etaq::to_string(a_) + " + " + bs + "*sqrt(" + std::to_string(d_) + ")";
    }

private:
    static int sgn(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

    static long joint_field(const QuadScalar& x, const QuadScalar& y) {
        if (x.d_ == 0) return y.d_;
        if (y.d_ == 0 || x.d_ == y.d_) return x.d_;
        throw FieldMismatch("elements of Q(sqrt(" + std::to_string(x.d_) + ")) and Q(sqrt(" +
                            std::to_string(y.d_) + ")) cannot be combined");
    }

    Rational a_, b_;
    long d_;
};

inline QuadScalar quad_mul(const QuadScalar& x, const QuadScalar& y) { return x * y; }
inline QuadScalar quad_inv(const QuadScalar& x) { return x.inverse(); }
inline bool quad_is_zero(const QuadScalar& x) { return x.is_zero(); }

// Inverse of QuadScalar::to_string; accepts "a", "a/b" and
// "a/b +- c/e*sqrt(d)".
inline QuadScalar quad_from_string(const std::string& s) {
    std::size_t root = s.find("*sqrt(");
    if (root == std::string::npos) return QuadScalar(rat_from_string(s));
    int sign = 1;
    std::size_t sep = s.find(" + ");
    if (sep == std::string::npos) {
        sep = s.find(" - ");
        sign = -1;
    }
    if (sep == std::string::npos || sep + 3 > root)
        throw ParseError("malformed quadratic scalar '" + s + "'", 0);
    std::size_t close = s.find(')', root);
    if (close == std::string::npos)
        throw ParseError("malformed quadratic scalar '" + s + "'", root);
    Rational a = rat_from_string(s.substr(0, sep));
    Rational b = rat_from_string(s.substr(sep + 3, root - sep - 3));
    long d = std::stol(s.substr(root + 6, close - root - 6));
    if (sign < 0) b = -b;
    return b == 0 ? QuadScalar(a) : QuadScalar(a, b, d);
}

}  // namespace etaq
