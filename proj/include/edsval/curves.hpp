#pragma once

#include <optional>
#include <string>
#include <utility>

#include "edsval/errors.hpp"
#include "edsval/field_traits.hpp"
#include "edsval/numbers.hpp"

namespace edsval {

template <class F>
struct Invariants {
    F b2, b4, b6, b8, c4, c6, delta, j;
};

template <class F>
class Point {
public:
    static Point identity() { return Point(); }
    static Point affine(F x, F y) {
        Point p;
        p.xy_.emplace(std::move(x), std::move(y));
        return p;
    }

    bool is_identity() const { return !xy_.has_value(); }
    const F& x() const { return require().first; }
    const F& y() const { return require().second; }

private:
    const std::pair<F, F>& require() const {
        if (!xy_) throw TorsionMultiple("the identity has no affine coordinates");
        return *xy_;
    }
    std::optional<std::pair<F, F>> xy_;
};

/// x = u^2 x' + r,  y = u^3 y' + s u^2 x' + t: maps a model E to E' with Δ' = u^-12 Δ.
template <class F>
struct Transformation {
    F u, r, s, t;
};

/// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F.
template <class F>
class Curve {
public:
    Curve(F a1, F a2, F a3, F a4, F a6)
        : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)), a6_(std::move(a6)),
          inv_(compute(true)) {}

    /// Same coefficients without the discriminant check; used for reduced (possibly singular)
    /// cubics whose non-singular points still form a group.
    static Curve possibly_singular(F a1, F a2, F a3, F a4, F a6) {
        return Curve(std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6), false);
    }

    const F& a1() const { return a1_; }
    const F& a2() const { return a2_; }
    const F& a3() const { return a3_; }
    const F& a4() const { return a4_; }
    const F& a6() const { return a6_; }
    const Invariants<F>& invariants() const { return inv_; }

    F lhs_minus_rhs(const F& x, const F& y) const {
        return y * y + a1_ * x * y + a3_ * y - (x * x * x + a2_ * x * x + a4_ * x + a6_);
    }

    bool contains(const Point<F>& P) const {
        return P.is_identity() || field_is_zero(lhs_minus_rhs(P.x(), P.y()));
    }

    void require_on_curve(const Point<F>& P) const {
        if (!contains(P)) throw PointNotOnCurve("point does not satisfy the Weierstrass equation");
    }

    Point<F> negate(const Point<F>& P) const {
        if (P.is_identity()) return P;
        return Point<F>::affine(P.x(), -P.y() - a1_ * P.x() - a3_);
    }

    Point<F> add(const Point<F>& P, const Point<F>& Q) const {
        if (P.is_identity()) return Q;
        if (Q.is_identity()) return P;
        const F& x1 = P.x();
        const F& y1 = P.y();
        const F& x2 = Q.x();
        const F& y2 = Q.y();
        F lambda = x1, nu = x1;
        if (field_equal(x1, x2)) {
            const F denom = y1 + y2 + a1_ * x2 + a3_;
            if (field_is_zero(denom)) return Point<F>::identity();
            const F three = field_const(x1, 3), two = field_const(x1, 2);
            const F d = two * y1 + a1_ * x1 + a3_;
            lambda = (three * x1 * x1 + two * a2_ * x1 + a4_ - a1_ * y1) / d;
            nu = (-(x1 * x1 * x1) + a4_ * x1 + two * a6_ - a3_ * y1) / d;
        } else {
            const F dx = x2 - x1;
            lambda = (y2 - y1) / dx;
            nu = (y1 * x2 - y2 * x1) / dx;
        }
        F x3 = lambda * lambda + a1_ * lambda - a2_ - x1 - x2;
        F y3 = -(lambda + a1_) * x3 - nu - a3_;
        return Point<F>::affine(std::move(x3), std::move(y3));
    }

    Point<F> scalar_mul(const Point<F>& P, long n) const {
        require_on_curve(P);
        Point<F> base = n < 0 ? negate(P) : P;
        unsigned long k = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1UL : static_cast<unsigned long>(n);
        Point<F> acc = Point<F>::identity();
        while (k != 0) {
            if (k & 1UL) acc = add(acc, base);
            k >>= 1;
            if (k != 0) base = add(base, base);
        }
        return acc;
    }

    Curve transform(const Transformation<F>& T) const {
        if (field_is_zero(T.u)) throw ArgumentError("transformation with u = 0");
        const F& u = T.u;
        const F& r = T.r;
        const F& s = T.s;
        const F& t = T.t;
        const F two = field_const(u, 2), three = field_const(u, 3);
        const F u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
        return Curve((a1_ + two * s) / u,
                     (a2_ - s * a1_ + three * r - s * s) / u2,
                     (a3_ + r * a1_ + two * t) / u3,
                     (a4_ - s * a3_ + two * r * a2_ - (t + r * s) * a1_ + three * r * r - two * s * t) / u4,
                     (a6_ + r * a4_ + r * r * a2_ + r * r * r - t * a3_ - t * t - r * t * a1_) / u6);
    }

    bool operator==(const Curve& o) const {
        return field_equal(a1_, o.a1_) && field_equal(a2_, o.a2_) && field_equal(a3_, o.a3_) &&
               field_equal(a4_, o.a4_) && field_equal(a6_, o.a6_);
    }

    std::string to_string() const {
        return "[" + field_to_string(a1_) + ", " + field_to_string(a2_) + ", " + field_to_string(a3_) + ", " +
               field_to_string(a4_) + ", " + field_to_string(a6_) + "]";
    }

private:
    Curve(F a1, F a2, F a3, F a4, F a6, bool check)
        : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)), a6_(std::move(a6)),
          inv_(compute(check)) {}

    Invariants<F> compute(bool check) const {
        Invariants<F> I{a1_, a1_, a1_, a1_, a1_, a1_, a1_, a1_};
        const F c4 = field_const(a1_, 4);
        I.b2 = a1_ * a1_ + c4 * a2_;
        I.b4 = field_const(a1_, 2) * a4_ + a1_ * a3_;
        I.b6 = a3_ * a3_ + c4 * a6_;
        I.b8 = a1_ * a1_ * a6_ + c4 * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_;
        I.c4 = I.b2 * I.b2 - field_const(a1_, 24) * I.b4;
        I.c6 = -(I.b2 * I.b2 * I.b2) + field_const(a1_, 36) * I.b2 * I.b4 - field_const(a1_, 216) * I.b6;
        I.delta = -(I.b2 * I.b2 * I.b8) - field_const(a1_, 8) * I.b4 * I.b4 * I.b4 -
                  field_const(a1_, 27) * I.b6 * I.b6 + field_const(a1_, 9) * I.b2 * I.b4 * I.b6;
        if (field_is_zero(I.delta)) {
            if (check) throw SingularModel("discriminant is zero: " + to_string());
            return I;
        }
        I.j = I.c4 * I.c4 * I.c4 / I.delta;
        return I;
    }

    F a1_, a2_, a3_, a4_, a6_;
    Invariants<F> inv_;
};

/// Image of a point under the coordinate change T (E -> E').
template <class F>
Point<F> transform_point(const Transformation<F>& T, const Point<F>& P) {
    if (P.is_identity()) return P;
    const F xr = P.x() - T.r;
    const F u2 = T.u * T.u;
    return Point<F>::affine(xr / u2, (P.y() - T.s * xr - T.t) / (u2 * T.u));
}

/// The single change of coordinates equal to applying `first` and then `second`.
template <class F>
Transformation<F> compose(const Transformation<F>& first, const Transformation<F>& second) {
    const F& u1 = first.u;
    const F u1sq = u1 * u1;
    return {u1 * second.u, u1sq * second.r + first.r, first.s + u1 * second.s,
            first.t + u1sq * u1 * second.t + first.s * u1sq * second.r};
}

using RationalCurve = Curve<Rational>;
using RationalPoint = Point<Rational>;
using PadicCurve = Curve<PadicNumber>;
using PadicPoint = Point<PadicNumber>;

RationalCurve make_curve(long a1, long a2, long a3, long a4, long a6);

enum class Minimality { MINIMAL, NOT_MINIMAL, UNKNOWN };
std::string to_string(Minimality m);

/// All coefficients have non-negative p-adic valuation.
bool is_integral_at(const RationalCurve& E, long p);
bool is_integral(const RationalCurve& E);

/// Throws NonIntegralModel when a coefficient is not p-integral.
Minimality is_minimal_at(const RationalCurve& E, long p);

struct ReducedPoint {
    bool identity = false;
    long x = 0;
    long y = 0;
    bool singular = false;
    std::optional<long> order;  ///< order in the non-singular part; empty for singular points
};

/// Largest prime for which reduce_mod_p enumerates the reduced group.
inline constexpr long kMaxReductionPrime = 10007;

/// Reduction of P modulo p. Requires a model known to be minimal at p.
ReducedPoint reduce_mod_p(const RationalCurve& E, const RationalPoint& P, long p);

/// Number of points (including infinity) on the non-singular part of E mod p, by enumeration.
long count_nonsingular_points(const RationalCurve& E, long p);

/// Short model y^2 = x^3 - 27 c4 x - 54 c6 reached by (1/6, -b2/12, -a1/2, a1 b2/24 - a3/2).
Transformation<Rational> to_short_form(const RationalCurve& E);

}  // namespace edsval
