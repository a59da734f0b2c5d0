#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "edsval/divpoly.hpp"
#include "edsval/heights.hpp"
#include "edsval/io.hpp"
#include "edsval/reduction.hpp"
#include "edsval/troublemaker.hpp"

using namespace edsval;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kInput = 2, kResource = 3 };

struct Config {
    std::string curve;
    std::string point;
    std::vector<long> primes;
    long n = 0;
    long precision = 64;
    double tolerance = 1e-3;
    std::string format = "text";
    bool check = false;
    bool factor = false;
    long depth = kDefaultHeightDepth;
    double coefficient = 5.5;
    long padic = 0;
};

const char* const kTable1Golden =
    "a,ell,n1,n2,n3,n4,n5,n6,n7,n8,n9,n10,n11,n12,n13\n"
    "1,2,0,1,2,4,6,9,12,16,20,25,30,36,42\n"
    "1,3,0,1,3,5,8,12,16,21,27,33,40,48,56\n"
    "2,3,0,1,3,5,8,12,16,21,27,33,40,48,56\n"
    "1,4,0,1,3,6,9,13,18,24,30,37,45,54,63\n"
    "2,4,0,2,4,8,12,18,24,32,40,50,60,72,84\n"
    "1,5,0,1,3,6,10,14,19,25,32,40,48,57,67\n"
    "2,5,0,2,5,9,15,21,29,38,48,60,72,86,101\n"
    "1,6,0,1,3,6,10,15,20,26,33,41,50,60,70\n"
    "2,6,0,2,6,10,16,24,32,42,54,66,80,96,112\n"
    "3,6,0,3,6,12,18,27,36,48,60,75,90,108,126\n"
    "1,7,0,1,3,6,10,15,21,27,34,42,51,61,72\n"
    "2,7,0,2,6,11,17,25,35,45,57,71,86,102,120\n"
    "3,7,0,3,7,13,21,30,42,54,69,85,103,123,144\n"
    "1,11,0,1,3,6,10,15,21,28,36,45,55,65,76\n";

std::string rational_text(const Rational& q, bool factor) {
    if (!factor) return to_fraction_string(q, false);
    const std::string num = factor_string(q.get_num(), 1000000);
    if (q.get_den() == 1) return num;
    return num + " / " + factor_string(q.get_den(), 1000000);
}

std::string valuation_text(ExtValuation v) { return v.to_string(); }

RationalCurve read_curve(const Config& c) {
    if (c.curve.empty()) throw ArgumentError("--curve is required");
    return curve_from_json(load_json(c.curve));
}

RationalPoint read_point(const Config& c) {
    if (!c.point.empty()) return point_from_json(load_json(c.point));
    const Json j = load_json(c.curve);
    if (j.is_object() && j.contains("P")) return point_from_json(j.at("P"));
    throw ArgumentError("--point is required");
}

Json curve_json(const Config& c) {
    if (c.curve.empty()) throw ArgumentError("--curve is required");
    return load_json(c.curve);
}

Json point_json(const Config& c) {
    if (!c.point.empty()) return load_json(c.point);
    const Json j = curve_json(c);
    if (j.is_object() && j.contains("P")) return j.at("P");
    throw ArgumentError("--point is required");
}

int cmd_eds(const Config& c) {
    const long N = c.n > 0 ? c.n : 10;
    if (c.padic > 0) {
        const PadicCurve E = padic_curve_from_json(curve_json(c), c.padic, c.precision);
        const PadicPoint P = padic_point_from_json(point_json(c), E, c.precision);
        const auto W = eds(E, P, N);
        if (c.format == "json") {
            Json terms = Json::array();
            for (long n = 1; n <= N; ++n) terms.push_back(W.at(n).to_string());
            std::cout << Json{{"p", c.padic}, {"terms", terms}, {"valuations", to_json(valuations(W))}}.dump(2) << '\n';
        } else {
            for (long n = 1; n <= N; ++n) std::cout << (c.format == "csv" ? std::to_string(n) + "," : "") << W.at(n).to_string() << '\n';
        }
        return kOk;
    }
    const RationalCurve E = read_curve(c);
    const RationalPoint P = read_point(c);
    const auto W = eds(E, P, N);
    if (c.format == "json") {
        Json terms = Json::array();
        for (long n = 1; n <= N; ++n) terms.push_back(to_fraction_string(W.at(n)));
        Json out{{"curve", E.to_string()}, {"terms", terms}};
        if (c.factor) {
            Json f = Json::array();
            for (long n = 1; n <= N; ++n) f.push_back(rational_text(W.at(n), true));
            out["factored"] = f;
        }
        std::cout << out.dump(2) << '\n';
        return kOk;
    }
    if (c.format == "csv") std::cout << "n,W_n\n";
    for (long n = 1; n <= N; ++n) {
        if (c.format == "csv") std::cout << n << ',';
        std::cout << rational_text(W.at(n), c.factor) << '\n';
    }
    return kOk;
}

void print_report_text(const VerificationReport& R) {
    const auto& P = R.params;
    std::cout << "p = " << R.p << ": " << to_string(P.type) << ", " << to_string(P.status) << "\n";
    std::cout << "  d = " << P.d << ", r = " << to_fraction_string(P.quad_offset, false)
              << ", x_coeff = " << to_fraction_string(P.x_coeff, false) << ", n_P = " << P.n_P << ", s_P = " << P.s_P
              << ", w_P = " << P.w_P << ", b_P = " << P.b_P << ", h_P = " << P.h_P;
    if (P.ell_P > 0) std::cout << ", a_P = " << P.a_P << ", ell_P = " << P.ell_P;
    std::cout << "\n  provenance:";
    for (const auto& [name, prov] : P.provenance) std::cout << ' ' << name << '=' << to_string(prov);
    std::cout << "\n  v:";
    for (const auto& v : R.direct) std::cout << ' ' << valuation_text(v);
    std::cout << "\n  checked n <= " << R.checked_n;
    if (R.fit_window > 0) std::cout << " (fit on n <= " << R.fit_window << ")";
    std::cout << ": " << (R.verified() ? "verified" : std::to_string(R.mismatches.size()) + " mismatches") << "\n";
    for (const auto& m : R.mismatches)
        std::cout << "    n = " << m.n << ": predicted " << m.predicted << ", actual " << m.actual << "\n";
}

int cmd_verify(const Config& c) {
    const long N = c.n > 0 ? c.n : 31;
    std::vector<VerificationReport> reports;
    if (c.padic > 0) {
        if (c.precision < 32) throw ArgumentError("p-adic runs need --precision >= 32");
        const PadicCurve E = padic_curve_from_json(curve_json(c), c.padic, c.precision);
        const PadicPoint P = padic_point_from_json(point_json(c), E, c.precision);
        reports.push_back(verify(E, P, N));
    } else {
        const RationalCurve E = read_curve(c);
        const RationalPoint P = read_point(c);
        const std::vector<long> primes = c.primes.empty() ? auto_primes(E, P) : c.primes;
        DeriveOptions opt;
        opt.precision = c.precision;
        for (long p : primes) reports.push_back(verify(E, P, p, N, opt));
    }
    bool all = true;
    for (const auto& R : reports) all = all && R.verified();
    if (c.format == "json") {
        Json arr = Json::array();
        for (const auto& R : reports) arr.push_back(to_json(R));
        std::cout << arr.dump(2) << '\n';
    } else if (c.format == "csv") {
        std::cout << "p,n,direct,predicted\n";
        for (const auto& R : reports)
            for (long n = 1; n <= R.checked_n; ++n)
                std::cout << R.p << ',' << n << ',' << R.direct[static_cast<std::size_t>(n - 1)] << ','
                          << predict(R.params, n) << '\n';
    } else {
        for (const auto& R : reports) print_report_text(R);
    }
    return all ? kOk : kMismatch;
}

int cmd_table1(const Config& c) {
    const std::string csv = table1_csv();
    if (c.check) {
        const bool same = csv == kTable1Golden;
        std::cout << (same ? "table matches the reference values\n" : "table differs from the reference values\n");
        return same ? kOk : kMismatch;
    }
    if (c.format == "json") {
        Json rows = Json::array();
        for (const auto& row : table1())
            rows.push_back({{"a", row.a}, {"ell", row.ell}, {"values", row.values}});
        std::cout << rows.dump(2) << '\n';
    } else {
        std::cout << csv;
    }
    return kOk;
}

int cmd_heights(const Config& c) {
    const RationalCurve E = read_curve(c);
    const RationalPoint P = read_point(c);
    const long N = c.n > 0 ? c.n : 20;
    Json out;
    std::ostringstream text;
    bool ok = true;

    if (P.is_identity()) throw ArgumentError("heights need an affine point");
    E.require_on_curve(P);
    const bool short_integral =
        E.a1() == 0 && E.a2() == 0 && E.a3() == 0 && E.a4().get_den() == 1 && E.a6().get_den() == 1;
    HeightValues hv = short_integral ? curve_heights(E) : HeightValues{};
    hv.h0 = curve_height_h0(E);
    hv.h_naive = naive_height(P.x());
    hv.h_hat = canonical_height(E, P, c.tolerance, c.depth);

    out["h_naive"] = round12(hv.h_naive);
    out["h_hat"] = round12(hv.h_hat);
    out["h0"] = round12(hv.h0);
    text << "h(x(P)) = " << format12(hv.h_naive) << "\nh_hat(P) = " << format12(hv.h_hat) << "\nh0(E) = " << format12(hv.h0)
         << '\n';
    if (hv.hI) {
        out["hI"] = round12(*hv.hI);
        out["hLH"] = round12(*hv.hLH);
        const bool prop101 = hv.h0 <= 18 * *hv.hI && *hv.hI <= 4 * hv.h0;
        out["prop_10_1_ok"] = prop101;
        ok = ok && prop101;
        text << "hI(E) = " << format12(*hv.hI) << "\nhLH(E) = " << format12(*hv.hLH)
             << "\nh0 <= 18 hI and hI <= 4 h0: " << (prop101 ? "yes" : "NO") << '\n';
    }

    const Lemma104Report L = check_lemma_10_4(E, P, N);
    out["lemma_10_4"] = to_json(L);
    if (!L.hypotheses_ok) {
        text << "denominator bounds not applicable: " << L.hypothesis_violation << '\n';
    } else {
        ok = ok && L.ok();
        text << "log D_n <= log|W_n| <= log D_n + (n^2/8) log|Delta| for n <= " << N << ": "
             << (L.ok() ? "yes" : "NO, first failure at n = " + std::to_string(L.first_violation())) << '\n';
    }

    const bool integral_point = P.x().get_den() == 1 && P.y().get_den() == 1;
    if (short_integral && integral_point && hv.h_hat > 0) {
        const IntegralMultiplesReport I = integral_multiples(E, P, std::max(N, 30L), c.coefficient, c.tolerance);
        out["integral_multiples"] = to_json(I);
        ok = ok && I.ok();
        text << "integral multiples n <= " << std::max(N, 30L) << ":";
        for (const auto& m : I.multiples) text << ' ' << m.n << (m.bound_ok ? "" : "(bound fails)");
        text << '\n';
    }

    if (c.format == "json") {
        std::cout << out.dump(2) << '\n';
    } else if (c.format == "csv") {
        std::cout << "n,Dn,log_Wn,bound_ok\n";
        for (const auto& row : L.rows)
            std::cout << row.n << ',' << row.Dn.get_str() << ',' << format12(row.log_Wn) << ','
                      << (row.bound_ok() ? "true" : "false") << '\n';
    } else {
        std::cout << text.str();
    }
    return ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Valuations of elliptic divisibility sequences"};
    app.require_subcommand(1);
    Config cfg;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--curve", cfg.curve, "curve as JSON {\"a\": [a1,a2,a3,a4,a6]} or a JSON file");
        sub->add_option("--point", cfg.point, "point as JSON [x, y] or \"O\"");
        sub->add_option("--n", cfg.n, "number of terms")->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--padic", cfg.padic, "work over Q_p with truncated arithmetic");
        sub->add_option("--precision", cfg.precision, "p-adic digits")->check(CLI::Range(32L, 1L << 20));
    };

    CLI::App* eds_cmd = app.add_subcommand("eds", "print W_1..W_N");
    add_input(eds_cmd);
    eds_cmd->add_flag("--factor", cfg.factor, "factor terms by trial division below 10^6");

    CLI::App* verify_cmd = app.add_subcommand("verify", "compare valuations with their closed forms");
    add_input(verify_cmd);
    verify_cmd->add_option("--primes", cfg.primes, "comma separated primes")->delimiter(',');

    CLI::App* table_cmd = app.add_subcommand("table1", "troublemaker sequences table");
    table_cmd->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    table_cmd->add_flag("--check", cfg.check, "compare with the reference values");

    CLI::App* heights_cmd = app.add_subcommand("heights", "heights and height inequalities");
    add_input(heights_cmd);
    heights_cmd->add_option("--tolerance", cfg.tolerance, "canonical height tolerance")->check(CLI::PositiveNumber);
    heights_cmd->add_option("--depth", cfg.depth, "maximum number of doublings")->check(CLI::PositiveNumber);
    heights_cmd->add_option("--coefficient", cfg.coefficient, "coefficient of hI in the integral-multiple bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }

    try {
        if (*eds_cmd) return cmd_eds(cfg);
        if (*verify_cmd) return cmd_verify(cfg);
        if (*table_cmd) return cmd_table1(cfg);
        if (*heights_cmd) return cmd_heights(cfg);
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << '\n';
        return kResource;
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kResource;
    } catch (const ConvergenceFailure& e) {
        std::cerr << "no convergence: " << e.what() << " (last estimate " << format12(e.last_estimate()) << ")\n";
        return kResource;
    } catch (const FitFailure& e) {
        std::cerr << "fit failure: " << e.what() << '\n';
        return kMismatch;
    } catch (const InternalInconsistency& e) {
        std::cerr << "internal inconsistency: " << e.what() << '\n';
        return kMismatch;
    } catch (const SingularModel& e) {
        std::cerr << "singular model: " << e.what() << '\n';
        return kInput;
    } catch (const NotMinimal& e) {
        std::cerr << "minimality: " << e.what() << '\n';
        return kInput;
    } catch (const Error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInput;
    }
    return kInput;
}
