#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "etaq/errors.hpp"
#include "etaq/primes.hpp"
#include "etaq/rational.hpp"

namespace etaq {

// Full Kronecker symbol (a/n), defined for every n including n <= 0 and
// even n.  Conventions: (a/0) = 1 iff a = +-1; (a/-1) = -1 iff a < 0;
// (a/2) = 0 for even a and +-1 by a mod 8 otherwise.
inline int kronecker(long a, long n) {
    if (a == 0 && n == 0) return 0;
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && n % 2 == 0) return 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v % 2 == 1) {
        long am8 = ((a % 8) + 8) % 8;
        if (am8 == 3 || am8 == 5) result = -result;
    }
    // Jacobi loop on odd positive n
    long r = a % n;
    if (r < 0) r += n;
    a = r;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

// Fundamental discriminant attached to D: the discriminant of Q(sqrt(D)),
// with squares collapsing to 1 (the trivial character).
inline long fundamental_discriminant(long D) {
    if (D == 0) throw HypothesisViolation("discriminant 0 has no character");
    long s = squarefree_part(D);
    long smod4 = ((s % 4) + 4) % 4;
    return smod4 == 1 ? s : 4 * s;
}

// Real Dirichlet characters chi_D(n) = (D/n), stored by their fundamental
// discriminant.  D = 1 is the trivial character chi_1.
class DirichletChar {
public:
    DirichletChar() : disc_(1) {}

    static DirichletChar trivial() { return DirichletChar(); }

    static DirichletChar kronecker_char(long D) {
        if (D == 0) throw HypothesisViolation("chi_0 is not a character");
        DirichletChar c;
        c.disc_ = fundamental_discriminant(D);
        return c;
    }

    long discriminant() const { return disc_; }
    bool is_trivial() const { return disc_ == 1; }
    long conductor() const { return disc_ < 0 ? -disc_ : disc_; }
    bool is_even() const { return disc_ > 0; }
    int parity() const { return kronecker(disc_, -1); }

    int operator()(long n) const { return kronecker(disc_, n); }

    friend bool operator==(const DirichletChar& x, const DirichletChar& y) {
        return x.disc_ == y.disc_;
    }
    friend bool operator!=(const DirichletChar& x, const DirichletChar& y) { return !(x == y); }
    friend bool operator<(const DirichletChar& x, const DirichletChar& y) {
        return x.disc_ < y.disc_;
    }

    // chi_{D1} * chi_{D2} = chi_{D1*D2} reduced to its fundamental
    // discriminant; the reduction is re-verified pointwise on a full period.
    friend DirichletChar operator*(const DirichletChar& x, const DirichletChar& y) {
        DirichletChar p = kronecker_char(x.disc_ * y.disc_);
        long period = std::lcm(std::lcm(x.conductor(), y.conductor()), p.conductor());
        for (long n = 1; n <= period; ++n) {
            if (std::gcd(n, period) != 1) continue;
            if (x(n) * y(n) != p(n))
                throw HypothesisViolation("character product normalization failed at n=" +
                                          std::to_string(n));
        }
        return p;
    }

    std::string label() const { return "chi_" + std::to_string(disc_); }

private:
    long disc_;
};

inline long char_conductor(const DirichletChar& c) { return c.conductor(); }
inline bool char_is_even(const DirichletChar& c) { return c.is_even(); }

// Bernoulli numbers in the B1 = -1/2 convention, via the defining
// recurrence sum_{j<=m} C(m+1,j) B_j = 0.  Returns B_0..B_upto by value so
// concurrent extensions of the shared cache cannot invalidate readers.
inline std::vector<Rational> bernoulli_numbers(std::size_t upto) {
    static std::vector<Rational> cache{rat(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= upto) {
        std::size_t m = cache.size();
        Rational acc(0);
        Rational binom(1);  // C(m+1, j), updated incrementally
        for (std::size_t j = 0; j < m; ++j) {
            acc += binom * cache[j];
            binom *= rat(static_cast<long>(m + 1 - j), static_cast<long>(j + 1));
        }
        cache.push_back(-acc / rat(static_cast<long>(m + 1)));
    }
    return {cache.begin(), cache.begin() + static_cast<long>(upto) + 1};
}

// Bernoulli polynomial B_k(x) = sum_i C(k,i) B_i x^{k-i}.
inline Rational bernoulli_poly(unsigned k, const Rational& x) {
    const auto& B = bernoulli_numbers(k);
    Rational acc(0);
    Rational binom(1);
    Rational xpow = pow_rat(x, static_cast<long>(k));
    for (unsigned i = 0; i <= k; ++i) {
        acc += binom * B[i] * xpow;
        if (i < k) {
            binom *= rat(static_cast<long>(k - i), static_cast<long>(i + 1));
            if (x == 0)
                xpow = (i + 1 == k) ? rat(1) : rat(0);
            else
                xpow /= x;
        }
    }
    return acc;
}

// Generalized Bernoulli number B_{k,chi} = N^{k-1} sum_{a=1}^{N} chi(a) B_k(a/N).
inline Rational gen_bernoulli(unsigned k, const DirichletChar& chi) {
    if (k < 1) throw HypothesisViolation("gen_bernoulli requires k >= 1");
    static std::map<std::pair<unsigned, long>, Rational> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(k, chi.discriminant());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    long N = chi.conductor();
    Rational acc(0);
    for (long a = 1; a <= N; ++a) {
        int ca = chi(a);
        if (ca == 0) continue;
        acc += rat(ca) * bernoulli_poly(k, rat(a, N));
    }
    Rational result = pow_rat(rat(N), static_cast<long>(k) - 1) * acc;
    cache.emplace(key, result);
    return result;
}

// L(1-k, chi) = -B_{k,chi}/k, the special values entering Eisenstein
// constant terms.
inline Rational l_value(unsigned k, const DirichletChar& chi) {
    return -gen_bernoulli(k, chi) / rat(static_cast<long>(k));
}

}  // namespace etaq
