#include <doctest.h>

#include <cmath>

#include "anosov/quadfield.hpp"

using namespace anosov;

TEST_CASE("rational construction and normalization") {
    const QuadVal half = QuadVal::rational(2, 4);
    CHECK(half == QuadVal::rational(1, 2));
    CHECK(half.to_double() == 0.5);
    CHECK(QuadVal::rational(-3, -6) == half);
    CHECK(QuadVal::integer(0).is_zero());
    CHECK_THROWS_AS(QuadVal::rational(1, 0), Error);
}

TEST_CASE("from_double embeds dyadic rationals exactly") {
    for (double v : {0.5, 0.25, 0.3, -1.75, 1e-12, 123456.789}) {
        CHECK(QuadVal::from_double(v).to_double() == v);
    }
    CHECK(QuadVal::from_double(0.0).is_zero());
}

TEST_CASE("golden ratio satisfies its minimal polynomial exactly") {
    // r = (1 + sqrt 5)/2, r^2 = r + 1
    const QuadVal r = QuadVal::make(1, 1, 2, 5);
    CHECK(r * r == r + QuadVal::integer(1));
    CHECK(r.to_double() == doctest::Approx(1.6180339887498949).epsilon(1e-15));
}

TEST_CASE("sign handles cancellation exactly") {
    // 161803398875/1e11 is slightly above (1+sqrt5)/2
    const QuadVal r = QuadVal::make(1, 1, 2, 5);
    const QuadVal approx_hi = QuadVal::rational(161803398875, 100000000000);
    const QuadVal approx_lo = QuadVal::rational(161803398874, 100000000000);
    CHECK((approx_hi - r).sign() == 1);
    CHECK((approx_lo - r).sign() == -1);
    CHECK((r - r).sign() == 0);
}

TEST_CASE("arithmetic identities") {
    const QuadVal r = QuadVal::make(3, -2, 7, 3);
    const QuadVal s = QuadVal::make(-1, 5, 4, 3);
    CHECK((r + s) - s == r);
    CHECK(r * s == s * r);
    CHECK((r - r).is_zero());
    CHECK(r.div_rational(3, 2) * QuadVal::rational(3, 2) == r);
    CHECK(min(r, s) <= max(r, s));
}

TEST_CASE("mixing discriminants is rejected") {
    const QuadVal a = QuadVal::root(5);
    const QuadVal b = QuadVal::root(8);
    CHECK_THROWS_AS(a + b, Error);
    CHECK_NOTHROW(a + QuadVal::rational(1, 3));  // rationals mix with anything
}

TEST_CASE("str/parse round trip") {
    const QuadVal r = QuadVal::make(-17, 5, 12, 5);
    CHECK(QuadVal::parse(r.str(), 5) == r);
    CHECK_THROWS_AS(QuadVal::parse("1,2", 5), Error);
}

TEST_CASE("interval operations") {
    const QuadInterval a{QuadVal::integer(0), QuadVal::integer(2)};
    const QuadInterval b{QuadVal::integer(1), QuadVal::integer(3)};
    const QuadInterval c = intersect(a, b);
    CHECK(c.lo == QuadVal::integer(1));
    CHECK(c.hi == QuadVal::integer(2));
    CHECK(a.overlaps_open(b));
    const QuadInterval d{QuadVal::integer(2), QuadVal::integer(3)};
    CHECK_FALSE(a.overlaps_open(d));
    CHECK(a.overlaps_closed(d));
    CHECK(c.subset_of(a));
}

TEST_CASE("to_double survives heavy cancellation") {
    // Lucas/Fibonacci pair: L_n - F_n*sqrt5 = 4(-1)^n / (L_n + F_n*sqrt5),
    // a tiny value obtained from ~25-digit cancelling terms.
    BigInt f_prev = 1, f_cur = 1;    // F_1, F_2
    BigInt l_prev = 1, l_cur = 3;    // L_1, L_2
    int n = 2;
    for (; n < 120; ++n) {
        f_cur = std::exchange(f_prev, f_cur) + f_cur;
        l_cur = std::exchange(l_prev, l_cur) + l_cur;
    }
    const QuadVal x = QuadVal::make(l_cur, -f_cur, 1, 5);
    const QuadVal conj = QuadVal::make(l_cur, f_cur, 1, 5);
    const int sign = (n % 2 == 0) ? 1 : -1;
    CHECK(x * conj == QuadVal::integer(4 * sign));
    const double denom = l_cur.convert_to<double>() + f_cur.convert_to<double>() * std::sqrt(5.0);
    CHECK(x.to_double() == doctest::Approx(4.0 * sign / denom).epsilon(1e-12));
}
