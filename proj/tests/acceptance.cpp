// Runs the twelve acceptance criteria and prints one line each.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "edsval/divpoly.hpp"
#include "edsval/formal.hpp"
#include "edsval/heights.hpp"
#include "edsval/io.hpp"
#include "edsval/reduction.hpp"
#include "edsval/troublemaker.hpp"
#include "golden.hpp"
#include "oracles.hpp"

using namespace edsval;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;

    void require(bool cond, const std::string& what) {
        if (!cond && pass) {
            pass = false;
            note = what;
        }
    }
};

long v(long n, long p) { return *oracle::val(oracle::Z(n), p); }

std::vector<ExtValuation> formula(long N, const std::function<ExtValuation(long)>& f) {
    std::vector<ExtValuation> out;
    for (long n = 1; n <= N; ++n) out.push_back(f(n));
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome table_one() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const std::string csv = table1_csv();
    const double secs = seconds_since(t0);
    o.require(csv == std::string(golden::kTable1Csv), "table differs from the reference");
    long entries = 0;
    for (const auto& r : table1()) entries += static_cast<long>(r.values.size());
    o.require(entries == 182, "expected 182 entries");
    o.require(secs < 1.0, "slower than 1 s");
    return o;
}

Outcome example_one() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto e1 = corpus::ex1();
    const auto r2 = verify(e1.E, e1.P, 2, 31);
    const auto r3 = verify(e1.E, e1.P, 3, 55);
    const auto r7 = verify(e1.E, e1.P, 7, 54);
    o.require(r2.direct == golden::kEx1V2 && r2.direct.back() == ExtValuation(960), "v_2 differs");
    o.require(r3.direct == golden::kEx1V3, "v_3 differs");
    o.require(r7.direct == golden::kEx1V7, "v_7 differs");
    o.require(r2.verified() && r3.verified() && r7.verified(), "prediction disagrees");
    o.require(seconds_since(t0) < 10.0, "slower than 10 s");
    return o;
}

Outcome example_two() {
    Outcome o;
    const auto e2 = corpus::ex2();
    const auto r2 = verify(e2.E, e2.P, 2, 48);
    o.require(r2.direct == golden::kEx2V2 && r2.direct.back() == ExtValuation(772), "v_2 differs");
    o.require(r2.verified() && r2.fit_window == 24, "v_2 fit on n <= 24 does not verify to 48");
    const auto r5 = verify(e2.E, e2.P, 5, 32);
    o.require(r5.direct == golden::kEx2V5 && r5.direct.back() == ExtValuation(-1023), "v_5 differs");
    o.require(r5.verified(), "v_5 prediction disagrees");
    return o;
}

Outcome example_three() {
    Outcome o;
    const auto e3 = corpus::ex3();
    const auto r = verify(e3.E, e3.P, 2, 15);
    const auto expect = formula(15, [](long n) { return n % 2 ? ExtValuation(-n * n + 1) : ExtValuation::infinity(); });
    o.require(r.direct == expect, "direct values differ from -n^2 + (1 or inf)");
    o.require(r.direct == golden::kEx3V2, "direct values differ from the reference");
    o.require(r.verified(), "prediction disagrees");
    return o;
}

Outcome example_four() {
    Outcome o;
    const auto e4 = corpus::ex4();
    const auto r = verify(e4.E, e4.P, 7, 42);
    o.require(r.direct == golden::kEx4V7 && r.direct.back() == ExtValuation(1984), "v_7 differs");
    o.require(r.verified(), "prediction disagrees");
    o.require(r.params.d == 2 && r.params.a_P == 5 && r.params.ell_P == 10, "fit is not d = 2 with R_n(5, 10)");
    return o;
}

Outcome example_five() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const long precision = 320;
    const Json curve = Json::parse(R"([0, 0, 0, {"sqrt": "17"}, {"sqrt": "17", "add": "2"}])");
    const auto E = padic_curve_from_json(curve, 2, precision);
    const auto P = padic_point_from_json(Json::parse(R"([-17, null])"), E, precision);
    const auto r = verify(E, P, 25);
    o.require(r.direct == golden::kEx5V2, "v_2 differs");
    o.require(r.verified(), "prediction disagrees");
    o.require(seconds_since(t0) < 30.0, "slower than 30 s");
    return o;
}

Outcome troublemaker_suite() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    auto hat = [](long x, long ell) { return ((x % ell) + ell) % ell; };
    for (long ell = 1; ell <= 40 && o.pass; ++ell)
        for (long a = 0; a <= ell && o.pass; ++a) {
            const long ah = hat(a, ell);
            for (long n = 0; n <= 60 && o.pass; ++n) {
                const long r = R(n, a, ell);
                o.require(r == oracle::R(n, a, ell), "R disagrees with its definition");
                o.require(R(n, 0, ell) == 0 && R(0, a, ell) == 0 && R(1, a, ell) == 0, "(ii)");
                o.require(r == R(n, ell + a, ell), "(iii)");
                o.require(r == R(n, ell - a, ell), "(iv)");
                for (long k = 1; k <= 5; ++k) o.require(R(n, k * a, k * ell) == k * r, "(v)");
                if (n >= 1) o.require(R(n + 1, a, ell) + R(n - 1, a, ell) - 2 * r < ell, "(vi)");
                if (a > 0 && n > 0 && n * a < ell) o.require(r == (n * n - n) / 2 * a, "(vii)");
                for (long m = 1; m <= 60; ++m) o.require(R(n, m * a, ell) == R(n * m, a, ell) - n * n * R(m, a, ell), "(vii) multiplicative");
                const auto var = R_variants(n, a, ell);
                o.require(var.consistent() && var.mainalt == r && var.bernoulli == r, "(ix)-(xi)");
                if (a < ell) o.require(var.shortmain.value() == r, "(x)");
                o.require(var.sum_form.value() == r, "(xii)");
                o.require(std::labs(16 * ell * r - 8 * n * n * ah * (ell - ah)) <= 2 * ell * ell, "(xiii)");
                if (a < ell && ell <= 7) o.require(R_single_floor(n, a, ell) == r, "(viii) for small ell");
            }
        }
    const auto w = single_floor_witness(8, 40, 60);
    o.require(w.has_value(), "no (viii) witness in [8, 40]");
    if (w) {
        const auto [n, a, ell] = *w;
        o.require(R_single_floor(n, a, ell) != oracle::R(n, a, ell), "(viii) witness does not differ");
    }
    o.require(seconds_since(t0) < 60.0, "slower than 60 s");
    return o;
}

Outcome formal_suite() {
    Outcome o;
    const auto m5 = mult_series(corpus::ex2().E, 5, 9);
    const std::vector<Rational> e5 = {0, 5, 0, 0, 0, Rational(-3083808), 0, Rational(-33480), 0,
                                      Rational(Integer("1574818510720"))};
    for (long i = 0; i <= 9; ++i) o.require(m5[i] == e5[static_cast<std::size_t>(i)], "[5]T coefficient");
    const auto m2 = mult_series(corpus::ex3().E, 2, 4);
    const std::vector<Rational> e2 = {0, 2, -1, -2, -6};
    for (long i = 0; i <= 4; ++i) o.require(m2[i] == e2[static_cast<std::size_t>(i)], "[2]T coefficient");
    struct Case {
        corpus::Example ex;
        long p;
        long m;
    };
    const std::vector<Case> cases = {
        {corpus::ex1(), 2, 6}, {corpus::ex1(), 3, 5}, {corpus::ex1(), 7, 6}, {corpus::ex2(), 5, 1},
        {corpus::ex2(), 2, 6}, {corpus::ex3(), 2, 1}, {corpus::ex4(), 7, 28},
    };
    for (const auto& c : cases) {
        const auto chk = lemma41_check(c.ex.E, c.ex.E.scalar_mul(c.ex.P, c.m), c.p, 3);
        o.require(chk.ok(), std::string("kernel valuations at ") + c.ex.name + " p=" + std::to_string(c.p));
    }
    return o;
}

Outcome eds_identity_suite() {
    Outcome o;
    std::vector<EDSSequence<Rational>> seqs;
    seqs.push_back(eds(corpus::ex1().E, corpus::ex1().P, 31));
    seqs.push_back(eds(corpus::ex2().E, corpus::ex2().P, 48));
    seqs.push_back(eds(corpus::ex3().E, corpus::ex3().P, 15));
    seqs.push_back(eds(corpus::ex4().E, corpus::ex4().P, 42));
    for (const Rational alpha : {Rational(2), Rational(3), Rational(5), Rational(-1), fraction(7, 2)})
        seqs.push_back(rank7_torsion_eds(alpha, 30).sequence);
    for (const auto& ex : corpus::short_integral()) seqs.push_back(eds(ex.E, ex.P, 20));
    for (const auto& W : seqs) {
        const long N = static_cast<long>(W.terms.size()) - 1;
        o.require(check_eds_identities(W, N).ok(), "identity fails on a computed sequence");
        for (long k : {2L, N / 2, N}) {
            auto M = W;
            M.terms[static_cast<std::size_t>(k)] += 1;
            o.require(!check_eds_identities(M, N, 1).ok(), "mutated sequence passes");
        }
    }
    return o;
}

Outcome rank_seven() {
    Outcome o;
    for (const Rational alpha : {Rational(2), Rational(3), Rational(5), Rational(-1), fraction(7, 2)}) {
        const auto r = rank7_torsion_eds(alpha, 30);
        o.require(r.mismatches.empty(), "closed form reports mismatches");
        for (long n = 1; n <= 30; ++n)
            o.require(r.sequence.at(n) == oracle::rank7_term(alpha, n), "term differs for alpha = " + alpha.get_str());
    }
    return o;
}

Outcome lemma_six_three() {
    Outcome o;
    const auto pairs = lemma63_pairs(24);
    const std::set<std::pair<long, long>> got(pairs.begin(), pairs.end());
    o.require(got == oracle::lemma63_expected(24), "enumerated pairs differ from the families");
    return o;
}

Outcome heights_suite() {
    Outcome o;
    auto corpus_short = corpus::short_integral();
    for (auto& ex : corpus::random_short(10)) corpus_short.push_back(ex);

    const auto e1 = corpus::ex1();
    o.require(check_lemma_10_4(e1.E, e1.P, 30).ok(), "denominator bounds on ex1");
    for (const auto& ex : corpus_short) {
        const auto rep = check_lemma_10_4(ex.E, ex.P, 30);
        o.require(rep.hypotheses_ok && rep.ok(), std::string("denominator bounds on ") + ex.name);
        const auto hv = curve_heights(ex.E);
        o.require(hv.h0 <= 18 * *hv.hI && *hv.hI <= 4 * hv.h0, std::string("h0/hI comparison on ") + ex.name);
        const auto im = integral_multiples(ex.E, ex.P, 30);
        for (const auto& m : im.multiples)
            if (m.n >= 2) o.require(m.bound_ok, std::string("integral multiple bound on ") + ex.name);
    }
    const auto hv2 = curve_heights(corpus::ex2().E);
    o.require(hv2.h0 <= 18 * *hv2.hI && *hv2.hI <= 4 * hv2.h0, "h0/hI comparison on ex2");

    const double tol = 1e-3;
    auto quad = corpus::short_integral();
    quad.erase(quad.begin() + 4, quad.end());
    quad.push_back(e1);
    for (const auto& ex : quad) {
        const double h = canonical_height(ex.E, ex.P, tol);
        o.require(h > 0, std::string("zero height for a point of infinite order on ") + ex.name);
        for (long n = 2; n <= 5; ++n) {
            const double hn = canonical_height(ex.E, ex.E.scalar_mul(ex.P, n), tol);
            o.require(std::fabs(hn - n * n * h) <= (n * n + 1) * tol, std::string("quadraticity on ") + ex.name);
        }
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"troublemaker table reproduction", table_one},
        {"first example valuations at 2, 3, 7", example_one},
        {"second example valuations at 2 and 5", example_two},
        {"third example 2-torsion pattern", example_three},
        {"fourth example closed form", example_four},
        {"fifth example over Q_2", example_five},
        {"troublemaker identities", troublemaker_suite},
        {"formal group series and kernel valuations", formal_suite},
        {"EDS identities with mutations", eds_identity_suite},
        {"rank-7 torsion identity", rank_seven},
        {"admissible index pairs by brute force", lemma_six_three},
        {"height inequalities and quadraticity", heights_suite},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note = std::string("exception: ") + e.what();
        }
        std::printf("criterion %zu: %s  %s (%.2f s)%s%s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    seconds_since(t0), o.pass ? "" : ": ", o.note.c_str());
        if (!o.pass) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
