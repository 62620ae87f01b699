#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "etaq/errors.hpp"

namespace etaq {

// Deterministic factorization backed by a smallest-prime-factor sieve.
// Arguments stay far below the point where probabilistic methods pay off:
// the largest values factored are predicate arguments ~ 8*limit + 3.
class PrimeTables {
public:
    static const PrimeTables& instance() {
        static PrimeTables t(1u << 20);
        return t;
    }

    explicit PrimeTables(std::uint32_t size) : spf_(size, 0) {
        for (std::uint32_t i = 2; i < size; ++i) {
            if (spf_[i] == 0) {
                primes_.push_back(i);
                for (std::uint64_t j = i; j < size; j += i)
                    if (spf_[j] == 0) spf_[j] = i;
            }
        }
    }

    std::uint32_t limit() const { return static_cast<std::uint32_t>(spf_.size()); }
    const std::vector<std::uint32_t>& primes() const { return primes_; }

    std::uint32_t spf(std::uint32_t n) const { return spf_[n]; }

private:
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

using Factorization = std::vector<std::pair<long, int>>;

inline Factorization factorize(long n) {
    if (n <= 0) throw HypothesisViolation("factorize requires a positive argument");
    const PrimeTables& t = PrimeTables::instance();
    Factorization f;
    auto push = [&f](long p) {
        if (!f.empty() && f.back().first == p)
            ++f.back().second;
        else
            f.emplace_back(p, 1);
    };
    std::uint64_t m = static_cast<std::uint64_t>(n);
    while (m > 1 && m < t.limit()) {
        std::uint32_t p = t.spf(static_cast<std::uint32_t>(m));
        push(p);
        m /= p;
    }
    if (m > 1) {
        for (std::uint32_t p : t.primes()) {
            if (static_cast<std::uint64_t>(p) * p > m) break;
            while (m % p == 0) {
                push(p);
                m /= p;
            }
            if (m < t.limit() && m > 1) {
                while (m > 1) {
                    std::uint32_t q = t.spf(static_cast<std::uint32_t>(m));
                    push(q);
                    m /= q;
                }
                break;
            }
        }
        if (m > 1) push(static_cast<long>(m));  // leftover prime
    }
    std::sort(f.begin(), f.end());
    return f;
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    Factorization f = factorize(n);
    return f.size() == 1 && f[0].second == 1;
}

inline int ord_p(long n, long p) {
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

inline long radical(long n) {
    long r = 1;
    for (const auto& [p, e] : factorize(n)) r *= p;
    return r;
}

// Squarefree part of |n| with the sign of n carried along.
inline long squarefree_part(long n) {
    if (n == 0) throw HypothesisViolation("squarefree part of 0");
    long sign = n < 0 ? -1 : 1;
    long r = 1;
    for (const auto& [p, e] : factorize(n < 0 ? -n : n))
        if (e % 2) r *= p;
    return sign * r;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> ds{1};
    for (const auto& [p, e] : factorize(n)) {
        std::size_t old = ds.size();
        long pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < old; ++j) ds.push_back(ds[j] * pe);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline long divisor_count(long n) {
    long c = 1;
    for (const auto& [p, e] : factorize(n)) c *= e + 1;
    return c;
}

inline bool is_perfect_square(long n) {
    if (n < 0) return false;
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n;
}

inline long isqrt(long n) {
    if (n < 0) throw HypothesisViolation("isqrt of a negative number");
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline long lcm_long(long a, long b) { return std::lcm(a, b); }

}  // namespace etaq
