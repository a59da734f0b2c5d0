#include "doctest.h"

#include <algorithm>
#include <random>

#include "edsval/errors.hpp"
#include "edsval/numbers.hpp"
#include "edsval/padic.hpp"
#include "oracles.hpp"

using namespace edsval;

TEST_CASE("extended valuations") {
    const ExtValuation inf = ExtValuation::infinity();
    CHECK((inf + 5) == inf);
    CHECK(inf > ExtValuation(1000000));
    CHECK((ExtValuation(3) + ExtValuation(-5)) == ExtValuation(-2));
    CHECK((3 * ExtValuation(4)) == ExtValuation(12));
    CHECK((2 * inf) == inf);
    CHECK((inf - ExtValuation(7)) == inf);
    CHECK(inf.to_string() == "inf");
    CHECK_THROWS_AS(inf.value(), ArgumentError);
}

TEST_CASE("p-adic valuation of rationals") {
    CHECK(vp(Rational(16), 2) == ExtValuation(4));
    CHECK(vp(Rational(0), 7).is_infinite());
    CHECK(vp(Rational(4719, 196), 7) == ExtValuation(-2));
    CHECK(vp(Rational(4719, 196), 11) == ExtValuation(2));
    CHECK_THROWS(require_prime(15));
}

TEST_CASE("valuation is additive and ultrametric on random rationals") {
    std::mt19937_64 rng(20260518);
    std::uniform_int_distribution<long> num(-5000, 5000), den(1, 3000);
    for (int it = 0; it < 400; ++it) {
        Rational x(num(rng), den(rng)), y(num(rng), den(rng));
        x.canonicalize();
        y.canonicalize();
        for (long p : {2L, 3L, 5L, 7L}) {
            const auto vx = vp(x, p), vy = vp(y, p);
            CHECK(vp(Rational(x * y), p) == vx + vy);
            const auto vs = vp(Rational(x + y), p);
            CHECK(vs >= std::min(vx, vy));
            if (vx != vy) CHECK(vs == std::min(vx, vy));
            if (x != 0) CHECK(vx.value() == *oracle::val(x, p));
        }
    }
}

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("-12/8") == Rational(-3, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(to_fraction_string(Rational(-3, 2)) == "-3/2");
    CHECK(to_fraction_string(Rational(5)) == "5/1");
    CHECK_THROWS_AS(parse_rational("1/0"), ArgumentError);
    CHECK_THROWS_AS(parse_rational("x"), ArgumentError);
    CHECK(floor(Rational(-7, 2)) == -4);
    CHECK(mod_nonneg(-3L, 5L) == 2);
    CHECK(naive_height(Rational(-8, 3)) == doctest::Approx(std::log(8.0)));
}

TEST_CASE("trial-division factor strings") {
    Integer cof;
    CHECK(factor_string(Integer(251658240), 1000000, &cof) == "2^24*3*5");
    CHECK(cof == 1);
    factor_string(Integer("1000003") * 4, 1000, &cof);
    CHECK(cof == Integer("1000003"));
}

TEST_CASE("prime field arithmetic") {
    const PrimeFieldElement a(7, 3), b(7, 5);
    CHECK((a + b).residue() == 1);
    CHECK((a * b).residue() == 1);
    CHECK((a / b * b) == a);
    CHECK(reduce(Rational(1, 3), 5).residue() == 2);
    CHECK_THROWS_AS(reduce(Rational(1, 5), 5), ArgumentError);
}

TEST_CASE("p-adic arithmetic tracks precision") {
    const Integer u(3), w(5);
    const auto x = PadicNumber::inexact(2, 1, u, 20), y = PadicNumber::inexact(2, 2, w, 20);
    CHECK((x * y).valuation() == ExtValuation(3));
    const auto one = PadicNumber::approx(2, 1, 10), minus_one = PadicNumber::approx(2, -1, 10);
    const auto z = one + minus_one;
    CHECK(z.is_precision_zero());
    CHECK(z.abs_precision() == ExtValuation(10));
    const auto q = PadicNumber::approx(3, Rational(7, 5), 30);
    const auto r = q / q;
    CHECK(r.valuation() == ExtValuation(0));
    CHECK(vp(Rational(r.lift() - 1), 3) >= ExtValuation(30));
    CHECK_THROWS_AS(guarded_valuation(z), PrecisionExhausted);
    CHECK_THROWS_AS(guarded_valuation(PadicNumber::approx(2, 3, 4)), PrecisionExhausted);
    CHECK(guarded_valuation(PadicNumber(2, Rational(12))) == ExtValuation(2));
    CHECK_THROWS_AS(PadicNumber(2, 1) + PadicNumber(3, 1), PrimeMismatch);
}

TEST_CASE("embedding a rational and reading its valuation back") {
    for (long p : {2L, 3L, 5L, 11L})
        for (long n = -40; n <= 40; ++n) {
            if (n == 0) continue;
            const Rational q = fraction(n, 13);
            CHECK(PadicNumber::approx(p, q, 16).valuation() == vp(q, p));
        }
}

TEST_CASE("Hensel square roots") {
    CHECK(hensel_sqrt(PadicNumber(5, 1), 20).lift() == 1);
    const auto r = hensel_sqrt(PadicNumber(2, 17), 10);
    const long res = mpz_fdiv_ui(r.lift().get_num_mpz_t(), 1024);
    const auto roots = oracle::sqrt_mod_2k(17, 10);
    CHECK(std::find(roots.begin(), roots.end(), res) != roots.end());
    CHECK(res % 4 == 1);
    CHECK_THROWS_AS(hensel_sqrt(PadicNumber(5, 2), 10), NoSquareRoot);
    for (long p : {2L, 3L, 7L}) {
        const Rational a = p == 2 ? Rational(41) : Rational(1 + p);
        const auto s = hensel_sqrt(PadicNumber(p, a), 40);
        const auto diff = s * s - PadicNumber(p, a);
        CHECK(diff.valuation() >= ExtValuation(40));
    }
}
