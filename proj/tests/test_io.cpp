#include "doctest.h"

#include "corpus.hpp"
#include "edsval/io.hpp"

using namespace edsval;

TEST_CASE("JSON parsing of curves and points") {
    const auto E = curve_from_json(load_json(R"({"a": [1, 1, 0, -1652, 25168], "P": [24, -4]})"));
    CHECK(E == corpus::ex1().E);
    const auto P = point_from_json(load_json(R"({"P": ["1/25", "1249/125"]})"));
    CHECK(P.x() == Rational(1, 25));
    CHECK(point_from_json(Json("O")).is_identity());
    CHECK(rational_from_json(Json("-3/6")) == Rational(-1, 2));
    CHECK_THROWS_AS(curve_from_json(Json::parse("[1, 2, 3]")), ArgumentError);
    CHECK_THROWS_AS(load_json("{not json"), ArgumentError);
    CHECK_THROWS_AS(load_json("/nonexistent/file.json"), ArgumentError);
    CHECK_THROWS_AS(rational_from_json(Json(1.5)), ArgumentError);
}

TEST_CASE("p-adic JSON entries") {
    const auto a = padic_from_json(Json::parse(R"({"sqrt": "17", "add": "2"})"), 2, 64);
    const auto r = a - PadicNumber(2, 2);
    const auto sq = r * r - PadicNumber(2, 17);
    CHECK(sq.valuation() >= ExtValuation(60));
    const auto E = padic_curve_from_json(Json::parse("[0, 0, 0, 1, 1]"), 3, 64);
    CHECK_THROWS_AS(padic_point_from_json(Json::parse("[0, null]"), padic_curve_from_json(Json::parse("[1, 0, 0, 1, 1]"), 3, 64), 64),
                    ArgumentError);
    const auto P = padic_point_from_json(Json::parse("[0, null]"), E, 64);
    CHECK((P.y() * P.y() - PadicNumber(3, 1)).valuation() >= ExtValuation(40));
}

TEST_CASE("serialization") {
    CHECK(to_json(ExtValuation::infinity()).is_null());
    CHECK(to_json(ExtValuation(-3)) == Json(-3));
    const auto e1 = corpus::ex1();
    const auto j = to_json(verify(e1.E, e1.P, 2, 12));
    CHECK(j["verified"] == true);
    CHECK(j["params"]["x_coeff"].get<std::string>().find('/') != std::string::npos);
    CHECK(j["valuations"].size() == 12);
    CHECK(format12(1.0 / 3.0) == "0.333333333333");
    CHECK(round12(0.1 + 0.2) == 0.3);
}

TEST_CASE("automatic prime selection") {
    const auto e1 = corpus::ex1();
    const auto primes = auto_primes(e1.E, e1.P);
    for (long p : {2L, 3L, 7L, 89L}) CHECK(std::find(primes.begin(), primes.end(), p) != primes.end());
    CHECK(std::is_sorted(primes.begin(), primes.end()));
}
