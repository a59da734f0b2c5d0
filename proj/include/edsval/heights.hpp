#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edsval/curves.hpp"
#include "edsval/numbers.hpp"
#include "edsval/reduction.hpp"

namespace edsval {

inline constexpr long kDefaultHeightDepth = 8;

struct HeightValues {
    double h_naive = 0;
    double h_hat = 0;
    double h0 = 0;
    std::optional<double> hI;
    std::optional<double> hLH;
};

/// h0(E) = max(h(j), log|Δ|, 1) for any model over Q.
double curve_height_h0(const RationalCurve& E);

/// h0, hI = max(h(j), log max(4|A|, 4|B|)) and hLH = log max(|A|, |B|) of y^2 = x^3 + Ax + B.
/// Throws ArgumentError unless the model is in that form with integral A, B.
HeightValues curve_heights(const RationalCurve& E);

/// True when Ψ_n(P) = 0 for some 1 <= n <= 12, i.e. P is a rational torsion point.
bool is_torsion(const RationalCurve& E, const RationalPoint& P);

/// ĥ(P) = lim h(x([2^k]P)) / (2·4^k), stopped once two successive steps each move the estimate
/// by less than `tolerance`. Torsion points give 0. Throws ConvergenceFailure after `max_depth` doublings.
double canonical_height(const RationalCurve& E, const RationalPoint& P, double tolerance,
                        long max_depth = kDefaultHeightDepth);

/// Curve heights together with h(x(P)) and ĥ(P). hI and hLH are filled only for short models.
HeightValues height_values(const RationalCurve& E, const RationalPoint& P, double tolerance);

struct DenominatorSequence {
    std::vector<Integer> terms;  ///< index 0 unused; 0 where [n]P = O
    std::vector<bool> torsion;

    long size() const { return static_cast<long>(terms.size()) - 1; }
    const Integer& at(long n) const { return terms.at(static_cast<std::size_t>(n)); }
};

/// D_n with D_n^2 the denominator of x([n]P) in lowest terms; a non-square denominator
/// raises InternalInconsistency.
DenominatorSequence denominators(const RationalCurve& E, const RationalPoint& P, long N);

/// Positive integer D with D^2 = den(x), or InternalInconsistency.
Integer denominator_root(const Rational& x);

struct Lemma104Row {
    long n = 0;
    Integer Dn;
    double log_Wn = 0;
    bool lower_ok = true;  ///< D_n <= |W_n|
    bool upper_ok = true;  ///< |W_n|^8 <= D_n^8 |Δ|^{n^2}
    bool bound_ok() const { return lower_ok && upper_ok; }
};

struct Lemma104Report {
    bool hypotheses_ok = true;
    std::string hypothesis_violation;
    std::vector<Lemma104Row> rows;

    bool ok() const;
    long first_violation() const;  ///< 0 when every row holds
};

/// log D_n <= log|W_n| <= log D_n + (n^2/8) log|Δ| for n <= N, by exact integer comparisons.
/// `delta_override` replaces |Δ| in the upper bound.
Lemma104Report check_lemma_10_4(const RationalCurve& E, const RationalPoint& P, long N,
                                std::optional<Integer> delta_override = std::nullopt);

struct IntegralMultiple {
    long n = 0;
    double bound = 0;  ///< log n + coefficient·hI
    bool bound_ok = true;
};

struct IntegralMultiplesReport {
    double h_hat = 0;
    double hI = 0;
    double coefficient = 5.5;
    std::vector<IntegralMultiple> multiples;

    bool ok() const;
};

/// n <= N with [n]P integral, each n >= 2 checked against ĥ(P) <= log n + coefficient·hI(E)
/// up to the height tolerance. Requires an integral short model and an integral non-torsion point.
IntegralMultiplesReport integral_multiples(const RationalCurve& E, const RationalPoint& P, long N,
                                           double coefficient = 5.5, double tolerance = 1e-3);

struct GrowthConstant {
    Rational estimate;
    Rational predicted;
    double A = 0;
    double B = 0;
    long first_violation = 0;  ///< least n with |v(W_n) - predicted n^2| > A + B log n, 0 if none

    bool ok() const { return first_violation == 0; }
};

/// Quadratic coefficient of v(W_n): least-squares estimate over n in [N/2, N] against the
/// closed-form value (r + c + â(ℓ-â)/2ℓ)/d, with the deviation bound checked for every n.
GrowthConstant growth_constant(const std::vector<ExtValuation>& valuations, const ClosedFormParams& params);

}  // namespace edsval
