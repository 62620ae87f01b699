#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "etaq/characters.hpp"

using namespace etaq;

namespace {

// Oracle for the Kronecker symbol: build (a/n) from first principles via
// Euler's criterion at odd primes plus the explicit (a/2), (a/-1), (a/0)
// rules.  Deliberately independent of the reciprocity-based implementation.
int legendre_euler(long a, long p) {
    long r = a % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    long e = (p - 1) / 2, base = r % p, acc = 1;
    while (e > 0) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return acc == 1 ? 1 : (acc == p - 1 ? -1 : 0);
}

int kronecker_oracle(long a, long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    for (const auto& [p, e] : factorize(n)) {
        int s;
        if (p == 2) {
            long am8 = ((a % 8) + 8) % 8;
            s = (am8 % 2 == 0) ? 0 : ((am8 == 1 || am8 == 7) ? 1 : -1);
        } else {
            s = legendre_euler(a, p);
        }
        for (int i = 0; i < e; ++i) {
            if (s == 0) return 0;
            result *= s;
        }
    }
    return result;
}

}  // namespace

TEST_CASE("kronecker examples") {
    CHECK(kronecker(-4, 3) == -1);
    CHECK(kronecker(12, 7) == -1);
    CHECK(kronecker(7, 1) == 1);
    CHECK(kronecker(-11, 1) == 1);
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(8, 3) == -1);
    CHECK(kronecker(1, 0) == 1);
    CHECK(kronecker(-1, 0) == 1);
    CHECK(kronecker(5, 0) == 0);
    CHECK(kronecker(-4, -1) == -1);
    CHECK(kronecker(4, -1) == 1);
}

TEST_CASE("kronecker agrees with the Euler-criterion oracle") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> ds(-60, 60), ns(-400, 400);
    int tested = 0;
    while (tested < 10000) {
        long D = ds(rng), n = ns(rng);
        if (D == 0) continue;
        CHECK(kronecker(D, n) == kronecker_oracle(D, n));
        ++tested;
    }
}

TEST_CASE("complete multiplicativity in the bottom argument") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> ds(-50, 50), ms(-60, 60);
    int tested = 0;
    while (tested < 10000) {
        long D = ds(rng), m = ms(rng), n = ms(rng);
        if (D == 0 || m == 0 || n == 0) continue;  // (D/0) breaks multiplicativity for D = -1
        CHECK(kronecker(D, m * n) == kronecker(D, m) * kronecker(D, n));
        ++tested;
    }
}

TEST_CASE("periodicity modulo the conductor on positive arguments") {
    for (long D = -50; D <= 50; ++D) {
        if (D == 0) continue;
        DirichletChar chi = DirichletChar::kronecker_char(D);
        long c = chi.conductor();
        for (long n = 1; n <= 1000; ++n)
            CHECK(chi(n) == chi(n % c == 0 ? c : n % c));
    }
}

TEST_CASE("conductors and parities") {
    auto chi = [](long D) { return DirichletChar::kronecker_char(D); };
    CHECK(chi(-4).conductor() == 4);
    CHECK(DirichletChar::trivial().conductor() == 1);
    CHECK(chi(12).conductor() == 12);  // disc Q(sqrt 3)
    CHECK(chi(9).is_trivial());        // perfect square collapses
    CHECK(chi(-1024).discriminant() == -4);
    CHECK(chi(1 << 15).discriminant() == 8);
    CHECK_FALSE(chi(-3).is_even());
    CHECK(DirichletChar::trivial().is_even());
    CHECK(chi(8).is_even());
    CHECK_FALSE(chi(-8).is_even());
    CHECK(chi(-3).parity() == -1);
}

TEST_CASE("character products reduce to fundamental discriminants") {
    auto chi = [](long D) { return DirichletChar::kronecker_char(D); };
    CHECK(chi(8) * chi(-4) == chi(-8));
    CHECK(chi(-4) * chi(-3) == chi(12));
    CHECK(chi(12) * chi(12) == DirichletChar::trivial());
    CHECK((chi(8) * chi(8)).is_trivial());
}

TEST_CASE("generalized Bernoulli numbers") {
    auto chi = [](long D) { return DirichletChar::kronecker_char(D); };
    CHECK(gen_bernoulli(2, DirichletChar::trivial()) == rat(1, 6));
    // hand evaluation of 12 * sum_{a in {1,5,7,11}} chi_12(a) B_2(a/12)
    CHECK(gen_bernoulli(2, chi(12)) == rat(4));
    CHECK(l_value(2, chi(12)) == rat(-2));
    // B_1(x) = x - 1/2 summed over a = 1, 3 mod 4
    CHECK(gen_bernoulli(1, chi(-4)) == rat(-1, 2));
    CHECK(l_value(1, chi(-4)) == rat(1, 2));
    CHECK(l_value(2, DirichletChar::trivial()) == rat(-1, 12));
    CHECK(l_value(1, DirichletChar::trivial()) == rat(-1, 2));
}

TEST_CASE("bernoulli polynomial sanity") {
    CHECK(bernoulli_poly(1, rat(1, 4)) == rat(-1, 4));
    CHECK(bernoulli_poly(2, rat(1)) == rat(1, 6));
    CHECK(bernoulli_poly(2, rat(1, 12)) == rat(13, 144));
    CHECK(bernoulli_poly(3, rat(0)) == rat(0));
}
