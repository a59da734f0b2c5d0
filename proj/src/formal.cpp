#include "edsval/formal.hpp"

#include <cmath>

namespace edsval {

FormalCoefficients<Rational> formal_coefficients(const RationalCurve& E) {
    return {E.a1(), E.a2(), E.a3(), E.a4(), E.a6()};
}

FormalCoefficients<PrimeFieldElement> formal_coefficients_mod_p(const RationalCurve& E, long p) {
    if (!is_integral_at(E, p)) throw NonIntegralModel("model is not " + std::to_string(p) + "-integral");
    return {reduce(E.a1(), p), reduce(E.a2(), p), reduce(E.a3(), p), reduce(E.a4(), p), reduce(E.a6(), p)};
}

BivariateSeries<Rational> formal_group_law(const RationalCurve& E, long D) {
    if (D < 1) throw ArgumentError("formal group law needs degree >= 1");
    const auto a = formal_coefficients(E);
    const auto w = formal_w(a, D + 1);
    const Rational zero(0);
    return formal_add_series(a, w, BivariateSeries<Rational>::x_var(zero, D), BivariateSeries<Rational>::y_var(zero, D));
}

PowerSeries<Rational> mult_series(const RationalCurve& E, long m, long D) {
    return mult_series_generic(formal_coefficients(E), m, D);
}

namespace {

void require_degree(long degree, long p) {
    if (degree < p * p + 1)
        throw PrecisionExhausted("[p]T must be known to degree p^2 + 1 = " + std::to_string(p * p + 1));
}

}  // namespace

BHResult extract_b_h(const PowerSeries<Rational>& s, long p) {
    require_prime(p);
    require_degree(s.degree(), p);
    for (long k = 1; k <= s.degree(); ++k) {
        const ExtValuation v = vp(s[k], p);
        if (v < ExtValuation(1)) return {k, v.value() < 0 ? 0 : v.value(), false};
    }
    return {1, 0, true};
}

BHResult extract_b_h(const PowerSeries<PrimeFieldElement>& s, long p) {
    require_prime(p);
    require_degree(s.degree(), p);
    for (long k = 1; k <= s.degree(); ++k)
        if (!s[k].is_zero()) return {k, 0, false};
    return {1, 0, true};
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::MEASURED: return "MEASURED";
        case Provenance::FITTED: return "FITTED";
        case Provenance::ASSUMED: break;
    }
    return "ASSUMED";
}

FormalBH formal_b_h(const RationalCurve& E, long p) {
    require_prime(p);
    if (p > kFormalPrimeCap) return {p, 0, Provenance::ASSUMED};
    const long D = p * p + 2;
    const auto series = mult_series_generic(formal_coefficients_mod_p(E, p), p, D);
    const BHResult r = extract_b_h(series, p);
    // [p]T ≡ 0 mod p happens for additive reduction, where the reduced formal group is additive
    return {r.b, r.h, Provenance::MEASURED};
}

void SParams::validate() const {
    require_prime(p);
    if (b != 1 && (b <= 0 || b % p != 0)) throw ArgumentError("b must be 1 or a positive multiple of p");
    if (d <= 0) throw ArgumentError("d must be positive");
    if (h < 0) throw ArgumentError("h must be non-negative");
    if (s.is_finite() && s.value() <= 0) throw ArgumentError("s must be positive or infinite");
    if (w.is_finite() && w.value() < 0) throw ArgumentError("w must be non-negative or infinite");
}

long geometric_sum(long b, long k) {
    long total = 0, power = 1;
    for (long i = 0; i < k; ++i) {
        total += power;
        power *= b;
    }
    return total;
}

long SParams::j() const {
    if (b == 1 || s.is_infinite()) return 0;
    const long base = (b - 1) * s.value() + h;
    long j = 0, scaled = base;
    while (d > scaled) {
        ++j;
        scaled *= b;
    }
    return j;
}

bool SParams::equality_case() const {
    if (b == 1 || s.is_infinite()) return false;
    long scaled = (b - 1) * s.value() + h;
    for (long k = 0; k < j(); ++k) scaled *= b;
    return scaled == d;
}

ExtValuation s_eval(const SParams& P, long n) {
    P.validate();
    if (n <= 0) throw ArgumentError("S_n is defined for positive n");
    if (P.s.is_infinite()) return ExtValuation::infinity();
    const long u = vp(Integer(n), P.p).value();
    const long j = P.j();
    const long s = P.s.value();
    auto bpow = [&](long k) {
        long r = 1;
        for (long i = 0; i < k; ++i) r *= P.b;
        return r;
    };
    if (u > j) {
        if (P.w.is_infinite()) return ExtValuation::infinity();
        return ExtValuation(bpow(j) * s + geometric_sum(P.b, j) * P.h + P.d * (u - j) + P.w.value());
    }
    return ExtValuation(bpow(u) * s + geometric_sum(P.b, u) * P.h);
}

std::pair<double, double> s_growth_bound(const SParams& P) {
    P.validate();
    if (P.s.is_infinite() || P.w.is_infinite()) throw ArgumentError("growth bound needs finite s and w");
    const long j = P.j();
    long bj = 1;
    for (long i = 0; i < j; ++i) bj *= P.b;
    const double A = static_cast<double>(bj * P.s.value() + geometric_sum(P.b, j) * P.h + P.w.value());
    return {A, static_cast<double>(P.d) / std::log(static_cast<double>(P.p))};
}

ExtValuation theta_valuation(const RationalCurve& E, const RationalPoint& P, long p) {
    require_prime(p);
    E.require_on_curve(P);
    if (P.is_identity()) return ExtValuation::infinity();
    const ExtValuation vx = vp(P.x(), p);
    if (!(vx < ExtValuation(0))) throw ArgumentError("point is not in the kernel of reduction");
    return vx - vp(P.y(), p);
}

ExtValuation theta_valuation(const PadicCurve& E, const PadicPoint& P) {
    (void)E;
    if (P.is_identity()) return ExtValuation::infinity();
    const ExtValuation vx = guarded_valuation(P.x());
    if (!(vx < ExtValuation(0))) throw ArgumentError("point is not in the kernel of reduction");
    return vx - guarded_valuation(P.y());
}

namespace {

std::vector<ExtValuation> kernel_valuations(const RationalCurve& E, const RationalPoint& z, long p, long kmax,
                                            long precision) {
    auto lift = [p](const Rational& q) { return PadicNumber(p, q); };
    const PadicCurve Ep(lift(E.a1()), lift(E.a2()), lift(E.a3()), lift(E.a4()), lift(E.a6()));
    PadicPoint Q = PadicPoint::affine(PadicNumber::approx(p, z.x(), precision), PadicNumber::approx(p, z.y(), precision));
    std::vector<ExtValuation> a;
    for (long k = 0; k <= kmax; ++k) {
        if (k > 0) Q = Ep.scalar_mul(Q, p);
        a.push_back(theta_valuation(Ep, Q));
        if (a.back().is_infinite()) {
            // rational torsion has order at most 12, so only small p^k are confirmed exactly
            long pk = 1;
            for (long i = 0; i < k; ++i) pk *= p;
            if (pk > 12 || !E.scalar_mul(z, pk).is_identity())
                throw PrecisionExhausted("multiple indistinguishable from the identity");
            while (static_cast<long>(a.size()) <= kmax) a.push_back(ExtValuation::infinity());
            break;
        }
    }
    return a;
}

}  // namespace

Lemma41Check lemma41_check(const RationalCurve& E, const RationalPoint& z, long p, long kmax, long precision) {
    require_prime(p);
    if (kmax < 0) throw ArgumentError("kmax must be non-negative");
    (void)theta_valuation(E, z, p);
    const FormalBH bh = formal_b_h(E, p);

    Lemma41Check out;
    out.p = p;
    out.b = bh.b;
    out.h = bh.h;
    std::vector<ExtValuation> a;
    for (long prec = precision;; prec *= 2) {
        try {
            a = kernel_valuations(E, z, p, kmax + 2, prec);
            break;
        } catch (const PrecisionExhausted&) {
            if (prec > 16 * precision) throw;
        }
    }
    SParams params{p, bh.b, 1, bh.h, a[0], 0};
    out.j = params.j();
    if (params.equality_case()) {
        const std::size_t j = static_cast<std::size_t>(out.j);
        if (j + 1 >= a.size()) throw ResourceLimit("equality case beyond the measured range");
        params.w = a[j + 1].is_infinite() ? ExtValuation::infinity() : a[j + 1] - a[j] - ExtValuation(1);
    }
    out.w = params.w;
    long pk = 1;
    for (long k = 0; k <= kmax; ++k) {
        out.measured.push_back(a[static_cast<std::size_t>(k)]);
        out.predicted.push_back(s_eval(params, pk));
        pk *= p;
    }
    return out;
}

}  // namespace edsval
