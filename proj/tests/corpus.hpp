#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "edsval/curves.hpp"
#include "edsval/heights.hpp"
#include "oracles.hpp"

namespace corpus {

using edsval::Rational;
using edsval::RationalCurve;
using edsval::RationalPoint;

struct Example {
    const char* name;
    RationalCurve E;
    RationalPoint P;
};

inline RationalPoint pt(const char* x, const char* y) {
    return RationalPoint::affine(Rational(x), Rational(y));
}

inline Example ex1() { return {"ex1", edsval::make_curve(1, 1, 0, -1652, 25168), pt("24", "-4")}; }
inline Example ex2() { return {"ex2", edsval::make_curve(0, 0, 0, 2471, 1), pt("1/25", "1249/125")}; }
inline Example ex3() { return {"ex3", edsval::make_curve(1, 1, 1, -135, -660), pt("-29/4", "25/8")}; }
inline Example ex4() {
    return {"ex4", RationalCurve(0, 14, 49, Rational("-312352901"), Rational("2123335052286")), pt("10206", "1176")};
}

/// Short integral models with an integral point of infinite order, for the height checks.
inline std::vector<Example> short_integral() {
    return {
        {"y2=x3-2x", edsval::make_curve(0, 0, 0, -2, 0), pt("-1", "1")},
        {"y2=x3-2", edsval::make_curve(0, 0, 0, 0, -2), pt("3", "5")},
        {"y2=x3+17", edsval::make_curve(0, 0, 0, 0, 17), pt("-2", "3")},
        {"y2=x3-x+1", edsval::make_curve(0, 0, 0, -1, 1), pt("1", "1")},
        {"y2=x3+x+1", edsval::make_curve(0, 0, 0, 1, 1), pt("0", "1")},
        {"y2=x3-4x+4", edsval::make_curve(0, 0, 0, -4, 4), pt("0", "2")},
        {"y2=x3-3x+3", edsval::make_curve(0, 0, 0, -3, 3), pt("1", "1")},
        {"y2=x3+2x+4", edsval::make_curve(0, 0, 0, 2, 4), pt("0", "2")},
        {"y2=x3-x+4", edsval::make_curve(0, 0, 0, -1, 4), pt("0", "2")},
        {"y2=x3+5x+1", edsval::make_curve(0, 0, 0, 5, 1), pt("0", "1")},
        {"y2=x3-7x+10", edsval::make_curve(0, 0, 0, -7, 10), pt("1", "2")},
        {"y2=x3+3", edsval::make_curve(0, 0, 0, 0, 3), pt("1", "2")},
    };
}

/// Short integral curves with an integral non-torsion point, drawn from a fixed seed.
inline std::vector<Example> random_short(std::size_t count) {
    std::mt19937 rng(1234567);
    std::uniform_int_distribution<long> coef(-30, 30), xs(-6, 12);
    std::vector<Example> out;
    while (out.size() < count) {
        const long A = coef(rng), B = coef(rng);
        if (4 * A * A * A + 27 * B * B == 0) continue;
        const long x = xs(rng);
        const long rhs = x * x * x + A * x + B;
        if (rhs <= 0) continue;
        const long y = std::lround(std::sqrt(static_cast<double>(rhs)));
        if (y * y != rhs) continue;
        const auto E = edsval::make_curve(0, 0, 0, A, B);
        const auto P = RationalPoint::affine(x, y);
        if (edsval::is_torsion(E, P)) continue;
        out.push_back({"random", E, P});
    }
    return out;
}

inline oracle::Model model(const RationalCurve& E) { return {E.a1(), E.a2(), E.a3(), E.a4(), E.a6()}; }
inline oracle::Pt point(const RationalPoint& P) {
    if (P.is_identity()) return std::nullopt;
    return std::make_pair(P.x(), P.y());
}

}  // namespace corpus
