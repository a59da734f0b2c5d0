#include "edsval/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace edsval {

Json load_json(const std::string& text_or_path) {
    const auto first = text_or_path.find_first_not_of(" \t\r\n");
    std::string text = text_or_path;
    if (first == std::string::npos || (text_or_path[first] != '{' && text_or_path[first] != '[')) {
        std::ifstream in(text_or_path);
        if (!in) throw ArgumentError("cannot read '" + text_or_path + "' as JSON or file");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ArgumentError(std::string("malformed JSON: ") + e.what());
    }
}

Rational rational_from_json(const Json& value) {
    if (value.is_number_integer()) return Rational(Integer(value.dump()));
    if (value.is_string()) return parse_rational(value.get<std::string>());
    throw ArgumentError("expected an integer or a \"num/den\" string, got " + value.dump());
}

RationalCurve curve_from_json(const Json& value) {
    const Json& a = value.is_object() && value.contains("a") ? value.at("a") : value;
    if (!a.is_array() || a.size() != 5) throw ArgumentError("curve needs five coefficients [a1, a2, a3, a4, a6]");
    return RationalCurve(rational_from_json(a[0]), rational_from_json(a[1]), rational_from_json(a[2]),
                         rational_from_json(a[3]), rational_from_json(a[4]));
}

RationalPoint point_from_json(const Json& value) {
    const Json& v = value.is_object() && value.contains("P") ? value.at("P") : value;
    if (v.is_string() && v.get<std::string>() == "O") return RationalPoint::identity();
    if (!v.is_array() || v.size() != 2) throw ArgumentError("point must be [x, y] or \"O\"");
    return RationalPoint::affine(rational_from_json(v[0]), rational_from_json(v[1]));
}

PadicNumber padic_from_json(const Json& value, long p, long precision) {
    if (value.is_object()) {
        if (!value.contains("sqrt")) throw ArgumentError("p-adic entry objects need a \"sqrt\" field");
        PadicNumber out = hensel_sqrt(PadicNumber(p, rational_from_json(value.at("sqrt"))), precision);
        if (value.contains("add")) out = out + PadicNumber(p, rational_from_json(value.at("add")));
        return out;
    }
    return PadicNumber(p, rational_from_json(value));
}

PadicCurve padic_curve_from_json(const Json& value, long p, long precision) {
    require_prime(p);
    const Json& a = value.is_object() && value.contains("a") ? value.at("a") : value;
    if (!a.is_array() || a.size() != 5) throw ArgumentError("curve needs five coefficients [a1, a2, a3, a4, a6]");
    auto c = [&](std::size_t i) { return padic_from_json(a[i], p, precision); };
    return PadicCurve(c(0), c(1), c(2), c(3), c(4));
}

PadicPoint padic_point_from_json(const Json& value, const PadicCurve& E, long precision) {
    const Json& v = value.is_object() && value.contains("P") ? value.at("P") : value;
    const long p = E.a1().prime();
    if (v.is_string() && v.get<std::string>() == "O") return PadicPoint::identity();
    if (!v.is_array() || v.size() != 2) throw ArgumentError("point must be [x, y] or \"O\"");
    const PadicNumber x = padic_from_json(v[0], p, precision);
    if (!v[1].is_null()) return PadicPoint::affine(x, padic_from_json(v[1], p, precision));
    if (!E.a1().is_exact_zero() || !E.a3().is_exact_zero())
        throw ArgumentError("y can be solved only when a1 = a3 = 0");
    const PadicNumber rhs = x * x * x + E.a2() * x * x + E.a4() * x + E.a6();
    const ExtValuation rel = rhs.rel_precision();
    const long target = rel.is_finite() ? std::max(8L, rel.value() - 8) : precision;
    return PadicPoint::affine(x, hensel_sqrt(rhs, target));
}

Json to_json(ExtValuation v) {
    if (v.is_infinite()) return nullptr;
    return v.value();
}

Json to_json(const std::vector<ExtValuation>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) out.push_back(to_json(v));
    return out;
}

Json to_json(const ClosedFormParams& P) {
    Json out;
    out["class"] = to_string(P.type);
    out["status"] = to_string(P.status);
    out["n_P"] = P.n_P;
    out["s_P"] = to_json(P.s_P);
    out["w_P"] = to_json(P.w_P);
    out["b_P"] = P.b_P;
    out["h_P"] = P.h_P;
    out["a_P"] = P.a_P;
    out["ell_P"] = P.ell_P;
    out["x_coeff"] = to_fraction_string(P.x_coeff);
    out["d"] = P.d;
    out["quad_offset"] = to_fraction_string(P.quad_offset);
    out["r_P"] = P.r_P;
    Json prov = Json::object();
    for (const auto& [name, p] : P.provenance) prov[name] = to_string(p);
    out["provenance"] = prov;
    return out;
}

Json to_json(const VerificationReport& R) {
    Json out;
    out["p"] = R.p;
    out["class"] = to_string(R.params.type);
    out["params"] = to_json(R.params);
    out["checked_n"] = R.checked_n;
    out["fit_window"] = R.fit_window;
    out["valuations"] = to_json(R.direct);
    Json mism = Json::array();
    for (const auto& m : R.mismatches)
        mism.push_back({{"n", m.n}, {"predicted", to_json(m.predicted)}, {"actual", to_json(m.actual)}});
    out["mismatches"] = mism;
    out["verified"] = R.verified();
    return out;
}

Json to_json(const Lemma104Report& R) {
    Json out;
    out["hypotheses_ok"] = R.hypotheses_ok;
    if (!R.hypotheses_ok) out["hypothesis_violation"] = R.hypothesis_violation;
    Json rows = Json::array();
    for (const auto& row : R.rows)
        rows.push_back({{"n", row.n}, {"Dn", row.Dn.get_str()}, {"log_Wn", round12(row.log_Wn)}, {"bound_ok", row.bound_ok()}});
    out["rows"] = rows;
    return out;
}

Json to_json(const IntegralMultiplesReport& R) {
    Json out;
    out["h_hat"] = round12(R.h_hat);
    out["hI"] = round12(R.hI);
    out["coefficient"] = round12(R.coefficient);
    Json rows = Json::array();
    for (const auto& m : R.multiples) rows.push_back({{"n", m.n}, {"bound", round12(m.bound)}, {"bound_ok", m.bound_ok}});
    out["multiples"] = rows;
    return out;
}

std::string format12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double round12(double x) { return std::strtod(format12(x).c_str(), nullptr); }

namespace {

void add_prime_factors(Integer m, long bound, std::set<long>& out) {
    m = abs(m);
    for (long p = 2; p < bound && m > 1; ++p) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p)) == 0) continue;
        remove_factor(m, p);
        out.insert(p);
    }
    if (m > 1 && m < bound) out.insert(m.get_si());
}

}  // namespace

std::vector<long> auto_primes(const RationalCurve& E, const RationalPoint& P, long bound) {
    std::set<long> primes;
    const Rational& delta = E.invariants().delta;
    add_prime_factors(delta.get_num(), bound, primes);
    add_prime_factors(delta.get_den(), bound, primes);
    if (!P.is_identity()) {
        const DenominatorSequence D = denominators(E, P, 10);
        for (long n = 1; n <= D.size(); ++n)
            if (!D.torsion[static_cast<std::size_t>(n)]) add_prime_factors(D.at(n), bound, primes);
    }
    return {primes.begin(), primes.end()};
}

}  // namespace edsval
