#include "edsval/curves.hpp"

#include <cmath>

namespace edsval {

RationalCurve make_curve(long a1, long a2, long a3, long a4, long a6) {
    return RationalCurve(Rational(a1), Rational(a2), Rational(a3), Rational(a4), Rational(a6));
}

std::string to_string(Minimality m) {
    switch (m) {
        case Minimality::MINIMAL: return "MINIMAL";
        case Minimality::NOT_MINIMAL: return "NOT_MINIMAL";
        case Minimality::UNKNOWN: break;
    }
    return "UNKNOWN";
}

bool is_integral_at(const RationalCurve& E, long p) {
    for (const Rational* a : {&E.a1(), &E.a2(), &E.a3(), &E.a4(), &E.a6()})
        if (vp(*a, p) < ExtValuation(0)) return false;
    return true;
}

bool is_integral(const RationalCurve& E) {
    for (const Rational* a : {&E.a1(), &E.a2(), &E.a3(), &E.a4(), &E.a6()})
        if (a->get_den() != 1) return false;
    return true;
}

Minimality is_minimal_at(const RationalCurve& E, long p) {
    require_prime(p);
    if (!is_integral_at(E, p))
        throw NonIntegralModel("model is not " + std::to_string(p) + "-integral: " + E.to_string());
    const auto& I = E.invariants();
    const ExtValuation vd = vp(I.delta, p);
    if (vd < ExtValuation(12)) return Minimality::MINIMAL;
    if (p >= 5) return vp(I.c4, p) < ExtValuation(4) ? Minimality::MINIMAL : Minimality::NOT_MINIMAL;
    return Minimality::UNKNOWN;
}

namespace {

using Fp = PrimeFieldElement;

Curve<Fp> reduced_curve(const RationalCurve& E, long p) {
    return Curve<Fp>::possibly_singular(reduce(E.a1(), p), reduce(E.a2(), p), reduce(E.a3(), p),
                                        reduce(E.a4(), p), reduce(E.a6(), p));
}

bool singular_at(const Curve<Fp>& C, const Fp& x, const Fp& y) {
    const Fp two(x.prime(), 2), three(x.prime(), 3);
    const Fp fx = C.a1() * y - three * x * x - two * C.a2() * x - C.a4();
    const Fp fy = two * y + C.a1() * x + C.a3();
    return fx.is_zero() && fy.is_zero();
}

}  // namespace

ReducedPoint reduce_mod_p(const RationalCurve& E, const RationalPoint& P, long p) {
    const Minimality m = is_minimal_at(E, p);
    if (m != Minimality::MINIMAL)
        throw NotMinimal("model is " + to_string(m) + " at p = " + std::to_string(p));
    E.require_on_curve(P);
    ReducedPoint out;
    if (P.is_identity() || vp(P.x(), p) < ExtValuation(0)) {
        out.identity = true;
        out.order = 1;
        return out;
    }
    const Curve<Fp> C = reduced_curve(E, p);
    const Fp x = reduce(P.x(), p);
    const Fp y = reduce(P.y(), p);
    out.x = x.residue();
    out.y = y.residue();
    out.singular = singular_at(C, x, y);
    if (out.singular) return out;
    if (p > kMaxReductionPrime)
        throw ResourceLimit("reduced group order by enumeration is limited to p <= " +
                            std::to_string(kMaxReductionPrime));

    const auto R = Point<Fp>::affine(x, y);
    const long cap = p + 2 + 2 * static_cast<long>(std::ceil(std::sqrt(static_cast<double>(p))));
    Point<Fp> Q = R;
    for (long k = 1; k <= cap; ++k) {
        if (Q.is_identity()) {
            out.order = k;
            return out;
        }
        Q = C.add(Q, R);
    }
    throw InternalInconsistency("reduced point order exceeds the Hasse bound");
}

long count_nonsingular_points(const RationalCurve& E, long p) {
    if (p > kMaxReductionPrime) throw ResourceLimit("point enumeration limited to small p");
    const Curve<Fp> C = reduced_curve(E, p);
    long count = 1;
    for (long xi = 0; xi < p; ++xi) {
        for (long yi = 0; yi < p; ++yi) {
            const Fp x(p, xi), y(p, yi);
            if (C.lhs_minus_rhs(x, y).is_zero() && !singular_at(C, x, y)) ++count;
        }
    }
    return count;
}

Transformation<Rational> to_short_form(const RationalCurve& E) {
    const Rational& b2 = E.invariants().b2;
    return {Rational(1, 6), Rational(-b2 / 12), Rational(-E.a1() / 2),
            Rational(E.a1() * b2 / 24 - E.a3() / 2)};
}

}  // namespace edsval
