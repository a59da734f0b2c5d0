#include "edsval/heights.hpp"

#include <algorithm>
#include <cmath>

#include "edsval/divpoly.hpp"
#include "edsval/troublemaker.hpp"

namespace edsval {

namespace {

bool is_short_integral(const RationalCurve& E) {
    return E.a1() == 0 && E.a2() == 0 && E.a3() == 0 && E.a4().get_den() == 1 && E.a6().get_den() == 1;
}

bool is_integral_point(const RationalPoint& P) {
    return !P.is_identity() && P.x().get_den() == 1 && P.y().get_den() == 1;
}

bool coefficients_integral(const RationalCurve& E) {
    for (const Rational* a : {&E.a1(), &E.a2(), &E.a3(), &E.a4(), &E.a6()})
        if (a->get_den() != 1) return false;
    return true;
}

Integer pow_ui(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

double j_height(const RationalCurve& E) { return naive_height(E.invariants().j); }

}  // namespace

double curve_height_h0(const RationalCurve& E) {
    const Rational& delta = E.invariants().delta;
    const double log_delta = log_abs(delta.get_num()) - log_abs(delta.get_den());
    return std::max({j_height(E), log_delta, 1.0});
}

HeightValues curve_heights(const RationalCurve& E) {
    if (!is_short_integral(E)) throw ArgumentError("hI and hLH need y^2 = x^3 + Ax + B with integral A, B");
    HeightValues out;
    out.h0 = curve_height_h0(E);
    const Integer A = abs(E.a4().get_num()), B = abs(E.a6().get_num());
    const Integer m = A > B ? A : B;
    out.hI = std::max(j_height(E), log_abs(Integer(4 * m)));
    out.hLH = m == 0 ? 0.0 : log_abs(m);
    return out;
}

bool is_torsion(const RationalCurve& E, const RationalPoint& P) {
    if (P.is_identity()) return true;
    DivisionValues<Rational> D(E, P);
    for (long n = 1; n <= 12; ++n)
        if (D.psi(n) == 0) return true;
    return false;
}

double canonical_height(const RationalCurve& E, const RationalPoint& P, double tolerance, long max_depth) {
    if (!(tolerance > 0)) throw ArgumentError("tolerance must be positive");
    if (P.is_identity()) throw ArgumentError("canonical height needs an affine point");
    E.require_on_curve(P);
    if (is_torsion(E, P)) return 0.0;
    RationalPoint Q = P;
    double scale = 2.0;
    double previous = naive_height(Q.x()) / scale;
    bool settled = false;
    for (long k = 1; k <= max_depth; ++k) {
        Q = E.add(Q, Q);
        scale *= 4.0;
        const double estimate = naive_height(Q.x()) / scale;
        // one small step can be a coincidence of tiny coordinates, so two in a row are required
        const bool close = std::fabs(estimate - previous) < tolerance;
        if (close && settled) return estimate;
        settled = close;
        previous = estimate;
    }
    throw ConvergenceFailure("canonical height did not settle within " + std::to_string(max_depth) + " doublings",
                             previous);
}

HeightValues height_values(const RationalCurve& E, const RationalPoint& P, double tolerance) {
    HeightValues out;
    if (is_short_integral(E)) {
        out = curve_heights(E);
    } else {
        out.h0 = curve_height_h0(E);
    }
    out.h_naive = naive_height(P.x());
    out.h_hat = canonical_height(E, P, tolerance);
    return out;
}

Integer denominator_root(const Rational& x) {
    const Integer& den = x.get_den();
    Integer root;
    mpz_sqrt(root.get_mpz_t(), den.get_mpz_t());
    if (root * root != den)
        throw InternalInconsistency("denominator " + den.get_str() + " of x([n]P) is not a perfect square");
    return root;
}

DenominatorSequence denominators(const RationalCurve& E, const RationalPoint& P, long N) {
    if (P.is_identity()) throw ArgumentError("denominators need an affine point");
    if (N < 1) throw ArgumentError("N must be positive");
    E.require_on_curve(P);
    DenominatorSequence out;
    out.terms.assign(1, Integer(0));
    out.torsion.assign(1, false);
    RationalPoint Q = P;
    for (long n = 1; n <= N; ++n) {
        if (Q.is_identity()) {
            out.terms.emplace_back(0);
            out.torsion.push_back(true);
        } else {
            out.terms.push_back(denominator_root(Q.x()));
            out.torsion.push_back(false);
        }
        Q = E.add(Q, P);
    }
    return out;
}

bool Lemma104Report::ok() const {
    return hypotheses_ok && first_violation() == 0;
}

long Lemma104Report::first_violation() const {
    for (const auto& row : rows)
        if (!row.bound_ok()) return row.n;
    return 0;
}

Lemma104Report check_lemma_10_4(const RationalCurve& E, const RationalPoint& P, long N,
                                std::optional<Integer> delta_override) {
    Lemma104Report rep;
    if (!coefficients_integral(E)) {
        rep.hypotheses_ok = false;
        rep.hypothesis_violation = "model is not integral";
    } else if (!is_integral_point(P)) {
        rep.hypotheses_ok = false;
        rep.hypothesis_violation = "point is not integral";
    } else if (is_torsion(E, P)) {
        rep.hypotheses_ok = false;
        rep.hypothesis_violation = "point has finite order";
    }
    if (!rep.hypotheses_ok) return rep;

    const Integer delta = delta_override ? abs(*delta_override) : abs(E.invariants().delta.get_num());
    const DenominatorSequence D = denominators(E, P, N);
    const EDSSequence<Rational> W = eds(E, P, N);
    for (long n = 1; n <= N; ++n) {
        const Rational& w = W.at(n);
        if (w.get_den() != 1) throw InternalInconsistency("W_" + std::to_string(n) + " is not an integer");
        const Integer Wn = abs(w.get_num());
        Lemma104Row row;
        row.n = n;
        row.Dn = D.at(n);
        row.log_Wn = log_abs(Wn);
        row.lower_ok = row.Dn <= Wn;
        row.upper_ok = pow_ui(Wn, 8) <= pow_ui(row.Dn, 8) * pow_ui(delta, static_cast<unsigned long>(n * n));
        rep.rows.push_back(row);
    }
    return rep;
}

bool IntegralMultiplesReport::ok() const {
    return std::all_of(multiples.begin(), multiples.end(), [](const IntegralMultiple& m) { return m.bound_ok; });
}

IntegralMultiplesReport integral_multiples(const RationalCurve& E, const RationalPoint& P, long N,
                                           double coefficient, double tolerance) {
    if (!is_short_integral(E)) throw ArgumentError("integral multiples need an integral short model");
    if (!is_integral_point(P)) throw ArgumentError("point is not integral");
    E.require_on_curve(P);
    if (is_torsion(E, P)) throw ArgumentError("point has finite order");
    IntegralMultiplesReport rep;
    rep.coefficient = coefficient;
    rep.hI = *curve_heights(E).hI;
    rep.h_hat = canonical_height(E, P, tolerance);
    RationalPoint Q = P;
    for (long n = 1; n <= N; ++n) {
        if (is_integral_point(Q)) {
            IntegralMultiple m;
            m.n = n;
            m.bound = std::log(static_cast<double>(n)) + coefficient * rep.hI;
            m.bound_ok = n < 2 || rep.h_hat <= m.bound + tolerance;
            rep.multiples.push_back(m);
        }
        Q = E.add(Q, P);
    }
    return rep;
}

GrowthConstant growth_constant(const std::vector<ExtValuation>& valuations, const ClosedFormParams& params) {
    const long N = static_cast<long>(valuations.size());
    if (N < 50) throw ArgumentError("growth constant needs at least 50 valuations");
    GrowthConstant out;

    Integer num = 0, den = 0;
    for (long n = (N + 1) / 2; n <= N; ++n) {
        const ExtValuation v = valuations[static_cast<std::size_t>(n - 1)];
        if (v.is_infinite()) continue;
        const Integer n2 = Integer(n) * n;
        num += Integer(v.value()) * n2;
        den += n2 * n2;
    }
    if (den == 0) throw ArgumentError("no finite valuations in the estimation window");
    out.estimate = fraction(num, den);

    Rational quad = params.quad_offset + params.x_coeff;
    double spread = 0;
    if (params.ell_P > 0) {
        const TroublemakerQuery q = normalize_query(params.a_P, params.ell_P);
        quad += fraction(q.a * (q.ell - q.a), 2 * q.ell);
        spread = static_cast<double>(q.ell) / 8.0;
    }
    out.predicted = quad / params.d;
    out.predicted.canonicalize();

    const SParams sp = params.s_params();
    const bool finite_s = sp.s.is_finite() && sp.w.is_finite();
    const auto [As, Bs] = finite_s ? s_growth_bound(sp) : std::pair<double, double>{0.0, 0.0};
    const double r = std::fabs(params.quad_offset.get_d());
    out.A = (r + spread + As) / static_cast<double>(params.d);
    out.B = Bs / static_cast<double>(params.d);

    for (long n = 1; n <= N; ++n) {
        const ExtValuation v = valuations[static_cast<std::size_t>(n - 1)];
        if (v.is_infinite()) continue;
        const double dev = std::fabs(static_cast<double>(v.value()) - out.predicted.get_d() * static_cast<double>(n) * n);
        if (dev > out.A + out.B * std::log(static_cast<double>(n)) + 1e-9) {
            out.first_violation = n;
            break;
        }
    }
    return out;
}

}  // namespace edsval
