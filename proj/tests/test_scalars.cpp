#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "etaq/quad.hpp"

using namespace etaq;

namespace {

std::mt19937 rng(20240917);

QuadScalar random_element(long d) {
    std::uniform_int_distribution<long> num(-12, 12);
    std::uniform_int_distribution<long> den(1, 9);
    return QuadScalar(rat(num(rng), den(rng)), rat(num(rng), den(rng)), d);
}

}  // namespace

TEST_CASE("rational plumbing") {
    CHECK(rat(6, 4) == rat(3, 2));
    CHECK(to_string(rat(-6, 4)) == "-3/2");
    CHECK(to_string(rat(5)) == "5");
    CHECK(rat_from_string("-3/2") == rat(-3, 2));
    CHECK_THROWS_AS(rat(1, 0), DivisionByZero);
    CHECK(floor_rat(rat(1, 4)) == 0);
    CHECK(floor_rat(rat(-1, 4)) == -1);
    CHECK(pow_rat(rat(2, 3), -2) == rat(9, 4));
}

TEST_CASE("quad_mul basics") {
    QuadScalar s2i = QuadScalar::sqrt_of(-2);
    CHECK(quad_mul(s2i, s2i) == QuadScalar(rat(-2)));
    QuadScalar a(rat(1), rat(1), 2), b(rat(-1), rat(1), 2);
    CHECK(quad_mul(a, b) == QuadScalar(rat(1)));
    CHECK_THROWS_AS(quad_mul(QuadScalar::sqrt_of(-2), QuadScalar::sqrt_of(-3)), FieldMismatch);
    // pure rationals coerce into either field
    CHECK(quad_mul(QuadScalar(rat(3)), s2i) == QuadScalar(rat(0), rat(3), -2));
}

TEST_CASE("quad_inv") {
    QuadScalar a(rat(1), rat(1), 2);
    CHECK(quad_inv(a) == QuadScalar(rat(-1), rat(1), 2));  // norm(1 + sqrt2) = -1
    CHECK(quad_mul(a, quad_inv(a)) == QuadScalar(rat(1)));
    CHECK(quad_inv(QuadScalar(rat(2), rat(0), -2)) == QuadScalar(rat(1, 2)));
    CHECK_THROWS_AS(quad_inv(QuadScalar()), DivisionByZero);
}

TEST_CASE("quad_is_zero is exact") {
    CHECK(quad_is_zero(QuadScalar(rat(0), rat(0), -2)));
    CHECK_FALSE(quad_is_zero(QuadScalar(rat(0), rat(1, 4), -2)));
    CHECK_FALSE(quad_is_zero(QuadScalar(rat(1), rat(-1), 5)));
}

TEST_CASE("canonical form drops the tag at b = 0") {
    QuadScalar x(rat(3), rat(0), -2);
    CHECK(x.is_rational());
    CHECK(x.d() == 0);
    CHECK(x == QuadScalar(rat(3)));
    // subtraction that kills the irrational part must land on the rational tag
    QuadScalar y = QuadScalar(rat(1), rat(2), 3) - QuadScalar(rat(0), rat(2), 3);
    CHECK(y.is_rational());
}

TEST_CASE("norm is multiplicative (random elements)") {
    for (long d : {-2L, -1L, 2L, 5L, -7L}) {
        for (int i = 0; i < 200; ++i) {
            QuadScalar x = random_element(d), y = random_element(d);
            CHECK(quad_mul(x, y).norm() == x.norm() * y.norm());
        }
    }
}

TEST_CASE("inverse round-trips (random nonzero elements)") {
    for (long d : {-2L, -1L, 2L}) {
        for (int i = 0; i < 200; ++i) {
            QuadScalar x = random_element(d);
            if (x.is_zero()) continue;
            CHECK(quad_mul(x, quad_inv(x)) == QuadScalar(rat(1)));
        }
    }
}

TEST_CASE("i/(2 sqrt2) is sqrt(-2)/4") {
    QuadScalar s(rat(0), rat(1, 4), -2);
    CHECK(quad_mul(s, s) == QuadScalar(rat(-1, 8)));
}

TEST_CASE("sign of real embeddings") {
    CHECK(QuadScalar(rat(1), rat(1), 2).sign_real() == 1);
    CHECK(QuadScalar(rat(-1), rat(1), 2).sign_real() == 1);   // sqrt2 > 1
    CHECK(QuadScalar(rat(-3), rat(2), 2).sign_real() == -1);  // 2 sqrt2 < 3
    CHECK(QuadScalar(rat(3), rat(-2), 2).sign_real() == 1);
    CHECK(QuadScalar().sign_real() == 0);
    CHECK_THROWS_AS(QuadScalar(rat(1), rat(1), -2).sign_real(), FieldMismatch);
}

TEST_CASE("canonical text rendering") {
    CHECK(QuadScalar(rat(1, 2), rat(-3, 4), -2).to_string() == "1/2 - 3/4*sqrt(-2)");
    CHECK(QuadScalar(rat(0), rat(1, 4), -2).to_string() == "0 + 1/4*sqrt(-2)");
    CHECK(QuadScalar(rat(-5, 3)).to_string() == "-5/3");
}

TEST_CASE("rendering round-trips through quad_from_string") {
    CHECK(quad_from_string("-5/3") == QuadScalar(rat(-5, 3)));
    CHECK(quad_from_string("1/2 - 3/4*sqrt(-2)") == QuadScalar(rat(1, 2), rat(-3, 4), -2));
    for (long d : {-2L, -1L, 2L, 0L}) {
        for (int i = 0; i < 300; ++i) {
            QuadScalar x = d == 0 ? QuadScalar(rat(i - 150, 7)) : random_element(d);
            CHECK(quad_from_string(x.to_string()) == x);
        }
    }
    CHECK_THROWS_AS(quad_from_string("nonsense*sqrt("), ParseError);
}
