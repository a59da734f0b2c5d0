#include "doctest.h"

#include "corpus.hpp"
#include "edsval/io.hpp"
#include "edsval/reduction.hpp"
#include "golden.hpp"
#include "oracles.hpp"

using namespace edsval;

namespace {

long v(long n, long p) { return *oracle::val(oracle::Z(n), p); }

std::vector<ExtValuation> formula(long N, const std::function<ExtValuation(long)>& f) {
    std::vector<ExtValuation> out;
    for (long n = 1; n <= N; ++n) out.push_back(f(n));
    return out;
}

VerificationReport verify_ex5(long N, long precision) {
    const Json curve = Json::parse(R"([0, 0, 0, {"sqrt": "17"}, {"sqrt": "17", "add": "2"}])");
    const auto E = padic_curve_from_json(curve, 2, precision);
    const auto P = padic_point_from_json(Json::parse(R"([-17, null])"), E, precision);
    return verify(E, P, N);
}

}  // namespace

TEST_CASE("reduction types from local invariants") {
    const auto inf = ExtValuation::infinity();
    (void)inf;
    CHECK(reduction_type(0, 0, 0) == ReductionType::GOOD);
    CHECK(reduction_type(8, 0, -8) == ReductionType::MULTIPLICATIVE);
    CHECK(reduction_type(4, 2, 2) == ReductionType::ADDITIVE_POT_GOOD);
    CHECK(reduction_type(12, 2, -6) == ReductionType::ADDITIVE_POT_MULT);
}

TEST_CASE("classification of the examples") {
    const auto e1 = corpus::ex1();
    const auto c7 = classify(e1.E, e1.P, 7);
    CHECK(c7.type == ReductionType::MULTIPLICATIVE);
    CHECK(c7.status == PointStatus::NONSINGULAR_REDUCTION);
    CHECK(c7.reduced_order == 6L);
    CHECK(classify(e1.E, e1.P, 2).status == PointStatus::SINGULAR_REDUCTION);
    CHECK(classify(e1.E, e1.P, 3).type == ReductionType::GOOD);
    CHECK(classify(corpus::ex2().E, corpus::ex2().P, 2).type == ReductionType::ADDITIVE_POT_GOOD);
    const auto c4 = classify(corpus::ex4().E, corpus::ex4().P, 7);
    CHECK(c4.type == ReductionType::ADDITIVE_POT_MULT);
    CHECK(c4.status == PointStatus::SINGULAR_REDUCTION);

    const auto scaled = e1.E.transform({Rational(1, 5), 0, 0, 0});
    const auto Ps = transform_point(Transformation<Rational>{Rational(1, 5), 0, 0, 0}, e1.P);
    CHECK_THROWS_AS(classify(scaled, Ps, 5), NotMinimal);
    CHECK_THROWS_AS(verify(scaled, Ps, 5, 10), NotMinimal);
}

TEST_CASE("measured parameters") {
    const auto e1 = corpus::ex1();
    CHECK(reduction_index(e1.E, e1.P, 2, 100) == 6);
    CHECK(reduction_index(e1.E, e1.P, 3, 100) == 5);
    CHECK(reduction_index(e1.E, e1.P, 7, 100) == 6);
    CHECK(reduction_index(corpus::ex2().E, corpus::ex2().P, 5, 100) == 1);
    CHECK(theta_valuation_of_multiple(e1.E, e1.P, 2, 12) == ExtValuation(3));

    const auto p2 = derive_params(e1.E, e1.P, 2);
    CHECK(p2.ell_P == 8);
    CHECK(p2.a_P == 4);
    CHECK(p2.n_P == 6);
    CHECK(p2.s_P == ExtValuation(1));
    CHECK(p2.w_P == ExtValuation(1));
    CHECK(p2.provenance.at("a_P") == Provenance::FITTED);
    CHECK(p2.provenance.at("n_P") == Provenance::MEASURED);
    const auto p3 = derive_params(e1.E, e1.P, 3);
    CHECK(p3.type == ReductionType::GOOD);
    CHECK(p3.n_P == 5);
    CHECK(p3.a_P == 0);
    const auto p7 = derive_params(e1.E, e1.P, 7);
    CHECK(p7.a_P == 0);
    CHECK(p7.status == PointStatus::NONSINGULAR_REDUCTION);

    const auto e3 = corpus::ex3();
    const auto q = derive_params(e3.E, e3.P, 2);
    CHECK(q.n_P == 1);
    CHECK(q.s_P == ExtValuation(1));
    CHECK(q.w_P.is_infinite());
}

TEST_CASE("predict on known entries") {
    const auto e1 = corpus::ex1();
    CHECK(predict(derive_params(e1.E, e1.P, 2), 12) == ExtValuation(147));
    const auto e2 = corpus::ex2();
    CHECK(predict(derive_params(e2.E, e2.P, 5), 7) == ExtValuation(-48));
    const auto e3 = corpus::ex3();
    CHECK(predict(derive_params(e3.E, e3.P, 2), 4).is_infinite());
    ClosedFormParams bad;
    bad.d = 2;
    bad.quad_offset = 1;
    CHECK_THROWS_AS(predict(bad, 3), InternalInconsistency);
}

TEST_CASE("direct valuations against the group-law oracle") {
    for (const auto& ex : {corpus::ex1(), corpus::ex2(), corpus::ex4()}) {
        const auto W = eds(ex.E, ex.P, 30);
        const auto ref = oracle::eds_by_group_law(corpus::model(ex.E), corpus::point(ex.P), 30);
        for (long p : {2L, 3L, 5L, 7L}) {
            const auto vals = valuations(W, p);
            for (long n = 1; n <= 30; ++n)
                CHECK(vals[static_cast<std::size_t>(n - 1)] == ExtValuation(*oracle::val(ref[static_cast<std::size_t>(n)], p)));
        }
    }
}

TEST_CASE("first example at 2, 3 and 7") {
    const auto e1 = corpus::ex1();
    const auto r2 = verify(e1.E, e1.P, 2, 31);
    CHECK(r2.direct == golden::kEx1V2);
    CHECK(r2.verified());
    const auto r3 = verify(e1.E, e1.P, 3, 55);
    CHECK(r3.direct == golden::kEx1V3);
    CHECK(r3.verified());
    const auto r7 = verify(e1.E, e1.P, 7, 54);
    CHECK(r7.direct == golden::kEx1V7);
    CHECK(r7.verified());
    for (long n = 1; n <= 55; ++n) CHECK(r3.direct[static_cast<std::size_t>(n - 1)] == ExtValuation(n % 5 ? 0 : 1 + v(n, 3)));
}

TEST_CASE("second example: additive potentially good at 2, kernel point at 5") {
    const auto e2 = corpus::ex2();
    const auto r2 = verify(e2.E, e2.P, 2, 48);
    CHECK(r2.direct == golden::kEx2V2);
    CHECK(r2.verified());
    CHECK(r2.fit_window == 24);
    CHECK(r2.params.d == 3);
    CHECK(r2.params.n_P == 3);
    CHECK(r2.params.provenance.at("n_P") == Provenance::FITTED);
    const auto expect2 = formula(48, [](long n) { return ExtValuation((n * n + (n % 3 ? -1 : 3 * v(n / 3, 2))) / 3); });
    CHECK(expect2 == golden::kEx2V2);
    CHECK(pot_good_np_allowed(r2.params.d, r2.params.quad_offset, r2.params.n_P));

    const auto r5 = verify(e2.E, e2.P, 5, 32);
    CHECK(r5.direct == golden::kEx2V5);
    CHECK(r5.verified());
    const auto expect5 = formula(32, [](long n) { return ExtValuation(-n * n + 1 + v(n, 5)); });
    CHECK(expect5 == golden::kEx2V5);
}

TEST_CASE("third example: 2-torsion in the kernel") {
    const auto e3 = corpus::ex3();
    const auto r = verify(e3.E, e3.P, 2, 15);
    CHECK(r.direct == golden::kEx3V2);
    CHECK(r.verified());
    const auto expect = formula(15, [](long n) {
        return n % 2 == 0 ? ExtValuation::infinity() : ExtValuation(-n * n + 1);
    });
    CHECK(expect == golden::kEx3V2);
}

TEST_CASE("fourth example: additive potentially multiplicative at 7") {
    const auto e4 = corpus::ex4();
    const auto r = verify(e4.E, e4.P, 7, 42);
    CHECK(r.direct == golden::kEx4V7);
    CHECK(r.verified());
    CHECK(r.params.d == 2);
    CHECK(r.params.ell_P == 10);
    CHECK(r.params.a_P == 5);
    const auto expect = formula(42, [](long n) {
        return ExtValuation((n * n - 1 + oracle::R(n, 5, 10) + (n % 4 ? 0 : 1 + 2 * v(n / 4, 7))) / 2);
    });
    CHECK(expect == golden::kEx4V7);
}

TEST_CASE("fifth example over Q_2") {
    const auto r = verify_ex5(25, 320);
    CHECK(r.direct == golden::kEx5V2);
    CHECK(r.verified());
    CHECK(pot_good_np_allowed(r.params.d, r.params.quad_offset, r.params.n_P));
    for (long n = 1; n <= 25; ++n) {
        const long inner = golden::kEx5Inner[static_cast<std::size_t>(n - 1)].value();
        CHECK(ExtValuation((8 * (n * n - 1) - 2 * n * n + inner) / 24) == golden::kEx5V2[static_cast<std::size_t>(n - 1)]);
    }
}

TEST_CASE("mutated parameters are caught") {
    auto rejected = [](const ClosedFormParams& params, const std::vector<ExtValuation>& direct) {
        try {
            return !compare(params, direct).empty();
        } catch (const InternalInconsistency&) {
            return true;
        }
    };
    const auto e1 = corpus::ex1();
    const auto r = verify(e1.E, e1.P, 2, 31);
    auto bad = r.params;
    bad.a_P += 1;
    CHECK_FALSE(compare(bad, r.direct).empty());
    bad = r.params;
    bad.n_P = 3;
    CHECK_FALSE(compare(bad, r.direct).empty());
    const auto e4 = corpus::ex4();
    const auto r4 = verify(e4.E, e4.P, 7, 42);
    bad = r4.params;
    bad.a_P = 4;
    CHECK(rejected(bad, r4.direct));
    CHECK_THROWS_AS(fit_closed_form(std::vector<ExtValuation>{0, 5, 0, 7, 1, 2, 0, 3}, e4.E, e4.P, 7), FitFailure);
}

TEST_CASE("simple form on multiples for non-singular points") {
    const auto e1 = corpus::ex1();
    for (long p : {3L, 5L, 7L, 23L}) {
        const auto r = verify(e1.E, e1.P, p, 60);
        CHECK(r.verified());
        const long nP = r.params.n_P;
        const auto& d = r.direct;
        const bool special = p == 2 && d[static_cast<std::size_t>(nP - 1)] == ExtValuation(1);
        if (special || r.params.status != PointStatus::NONSINGULAR_REDUCTION) continue;
        for (long n = nP; n <= 60; n += nP)
            CHECK(d[static_cast<std::size_t>(n - 1)] == d[static_cast<std::size_t>(nP - 1)] + ExtValuation(v(n / nP, p)));
        for (long n = 1; n <= 60; ++n)
            if (n % nP) CHECK(d[static_cast<std::size_t>(n - 1)] == ExtValuation(0));
    }
}

TEST_CASE("a_P vanishes exactly for non-singular points of multiplicative reduction") {
    const auto e1 = corpus::ex1();
    for (long p : {2L, 7L, 89L}) {
        const auto params = derive_params(e1.E, e1.P, p);
        REQUIRE(params.type == ReductionType::MULTIPLICATIVE);
        CHECK((params.a_P == 0) == (params.status == PointStatus::NONSINGULAR_REDUCTION));
    }
}

TEST_CASE("rank-7 torsion point at a multiplicative prime") {
    const auto r7 = rank7_torsion_eds(Rational(2), 30);
    const auto rep = verify(r7.model, r7.point, 2, 30);
    CHECK(rep.params.type == ReductionType::MULTIPLICATIVE);
    CHECK(rep.verified());
    CHECK(rep.params.n_P == 7);
    CHECK(rep.params.n_P == rep.params.ell_P / std::gcd(rep.params.a_P, rep.params.ell_P));
    CHECK(rep.params.s_P.is_infinite());
}

TEST_CASE("allowed reduction indices for potentially good fits") {
    CHECK(pot_good_np_allowed(3, 1, 3));
    CHECK(pot_good_np_allowed(3, 1, 1));
    CHECK_FALSE(pot_good_np_allowed(3, 1, 2));
    CHECK(pot_good_np_allowed(4, 1, 2));
    CHECK_FALSE(pot_good_np_allowed(4, 1, 3));
    CHECK(pot_good_np_allowed(6, 1, 1));
    CHECK_FALSE(pot_good_np_allowed(6, 1, 2));
}

TEST_CASE("admissible index pairs by brute force") {
    const auto pairs = lemma63_pairs(24);
    const std::set<std::pair<long, long>> got(pairs.begin(), pairs.end());
    CHECK(got == oracle::lemma63_expected(24));
    CHECK(got.count({2, 4}) == 1);
    CHECK(got.count({3, 3}) == 1);
    CHECK(got.count({3, 9}) == 0);
}

TEST_CASE("p-adic local data") {
    const Json curve = Json::parse(R"([0, 0, 0, {"sqrt": "17"}, {"sqrt": "17", "add": "2"}])");
    const auto E = padic_curve_from_json(curve, 2, 200);
    const auto P = padic_point_from_json(Json::parse(R"([-17, null])"), E, 200);
    const auto ld = local_data(E, P);
    CHECK(ld.v_delta == ExtValuation(4));
    CHECK(ld.type == ReductionType::ADDITIVE_POT_GOOD);
}
