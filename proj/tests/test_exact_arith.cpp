#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <arbor/mat2.hpp>
#include <arbor/rng.hpp>

#include "support/fixtures.hpp"

using namespace arbor;

namespace {

Rational random_rational(Rng& rng, long p) {
    Rational x(rng.uniform(-50, 50));
    if (x == 0) x = 1;
    x /= Rational(rng.uniform(1, 50));
    return x * rat_pow(p, rng.uniform(-4, 4));
}

Mat2 random_mat(Rng& rng) {
    auto e = [&] { return Rational(rng.uniform(-9, 9)) / Rational(rng.uniform(1, 9)); };
    return {e(), e(), e(), e()};
}

}  // namespace

TEST_CASE("p-adic valuation basics") {
    CHECK(vp(Rational("26/5"), 5) == Valuation::finite(-1));
    CHECK(vp(Rational(1), 2) == Valuation::finite(0));
    CHECK(vp(Rational(1), 13) == Valuation::finite(0));
    CHECK(vp(Rational(147), 7) == Valuation::finite(2));
    CHECK(vp(Rational(0), 3).is_infinite());
    CHECK(vp(Rational(0), 7) == Valuation::infinity());
    CHECK_THROWS_AS(Valuation::infinity().value(), std::logic_error);
}

TEST_CASE("valuation is additive and ultrametric") {
    for (long p : {2L, 3L, 5L}) {
        Rng rng(42 + p);
        for (int t = 0; t < 1000; ++t) {
            Rational x = random_rational(rng, p);
            Rational y = random_rational(rng, p);
            CHECK(vp(x * y, p).value() == vp(x, p).value() + vp(y, p).value());
            long vx = vp(x, p).value(), vy = vp(y, p).value();
            if (x + y != 0) {
                long vs = vp(x + y, p).value();
                CHECK(vs >= std::min(vx, vy));
                if (vx != vy) CHECK(vs == std::min(vx, vy));
            }
        }
    }
}

TEST_CASE("rationals are stored reduced") {
    Rational x(26, 4);
    CHECK(numerator(x) == 13);
    CHECK(denominator(x) == 2);
    Rational y = parse_rational("-6/4");
    CHECK(numerator(y) == -3);
    CHECK(denominator(y) == 2);
    CHECK(Rational("2/4") == Rational("1/2"));
}

TEST_CASE("rational string format") {
    CHECK(format_rational(Rational("-178/49")) == "-178/49");
    CHECK(format_rational(Rational(5)) == "5");
    CHECK(parse_rational("-178/49") == Rational(-178, 49));
    CHECK(parse_rational("5") == Rational(5));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("matrix algebra") {
    Mat2 id = Mat2::identity();
    CHECK(mat_inv(id) == id);

    Mat2 g3 = fixtures::q5_triple()[2];
    CHECK(det(g3) == 1);
    CHECK(mat_inv(g3) * g3 == id);

    Mat2 g1 = fixtures::q7_quintuple()[0];
    CHECK(trace(g1) == Rational("418/147"));
    CHECK(det(g1) == 1);

    CHECK_THROWS_AS(mat_inv(Mat2{2, 0, 0, 1}), std::invalid_argument);
}

TEST_CASE("determinant is multiplicative; trace helpers match products") {
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        Mat2 a = random_mat(rng);
        Mat2 b = random_mat(rng);
        CHECK(det(a * b) == det(a) * det(b));
        CHECK(trace_mul(a, b) == trace(a * b));
        if (det(b) == 1) CHECK(trace_mul_inv(a, b) == trace(a * mat_inv(b)));
    }
}

TEST_CASE("primality guard") {
    CHECK(is_prime(2));
    CHECK(is_prime(13));
    CHECK(!is_prime(1));
    CHECK(!is_prime(9));
    CHECK_THROWS_AS(require_prime(15), std::invalid_argument);
}
