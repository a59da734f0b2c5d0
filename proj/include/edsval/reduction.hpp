#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edsval/curves.hpp"
#include "edsval/divpoly.hpp"
#include "edsval/formal.hpp"
#include "edsval/numbers.hpp"

namespace edsval {

enum class ReductionType { GOOD, MULTIPLICATIVE, ADDITIVE_POT_GOOD, ADDITIVE_POT_MULT };
enum class PointStatus { NONSINGULAR_REDUCTION, SINGULAR_REDUCTION };

std::string to_string(ReductionType t);
std::string to_string(PointStatus s);

struct ReductionClass {
    ReductionType type = ReductionType::GOOD;
    PointStatus status = PointStatus::NONSINGULAR_REDUCTION;
    std::optional<long> reduced_order;  ///< order of the reduced point when non-singular and enumerable
};

/// Local invariants at p used by classification and fitting.
struct LocalData {
    long p = 2;
    ExtValuation v_delta = 0;
    ExtValuation v_c4 = 0;
    ExtValuation v_j = 0;
    ReductionType type = ReductionType::GOOD;
    PointStatus status = PointStatus::NONSINGULAR_REDUCTION;
};

/// Reduction type from (v(Δ), v(c4), v(j)) of a minimal model.
ReductionType reduction_type(ExtValuation v_delta, ExtValuation v_c4, ExtValuation v_j);

/// Requires a model known to be minimal at p (NotMinimal otherwise).
ReductionClass classify(const RationalCurve& E, const RationalPoint& P, long p);
LocalData local_data(const RationalCurve& E, const RationalPoint& P, long p);
/// Same data for a p-integral model over Q_p; valuations are read with the precision guard.
LocalData local_data(const PadicCurve& E, const PadicPoint& P);

struct ClosedFormParams {
    long p = 2;
    ReductionType type = ReductionType::GOOD;
    PointStatus status = PointStatus::NONSINGULAR_REDUCTION;
    long n_P = 1;
    ExtValuation s_P = 1;
    ExtValuation w_P = 0;
    long b_P = 1;
    long h_P = 0;
    long a_P = 0;
    long ell_P = 0;          ///< 0 when the troublemaker term is absent
    Rational x_coeff = 0;    ///< coefficient of n^2 in the inner form
    long d = 1;
    Rational quad_offset = 0;  ///< coefficient of (n^2 - 1) in d·v(W_n)
    long r_P = 0;
    std::map<std::string, Provenance> provenance;

    SParams s_params() const { return {p, b_P, d, h_P, s_P, w_P}; }
};

/// v(W_n) from the closed form:
/// (r(n^2-1) + c n^2 + R_n(a, ℓ) + [n_P | n] S_{n/n_P}(p, b, d, h, s, w)) / d.
/// Throws InternalInconsistency when the bracket is not divisible by d.
ExtValuation predict(const ClosedFormParams& params, long n);

struct DeriveOptions {
    long probe_cap = 0;     ///< largest n searched for n_P; 0 selects 4(p+1)^2
    long fit_window = 24;   ///< n <= fit_window used when a parameter must be fitted
    long precision = 64;    ///< initial p-adic digits for the local probes
};

/// Least n with [n]P in the kernel of reduction mod p (P a multiple of the identity counts).
long reduction_index(const RationalCurve& E, const RationalPoint& P, long p, long cap, long precision = 64);

/// v(Θ([m]P)) = v(Ψ_m) - v(φ_m)/2 for [m]P in the kernel of reduction; ∞ if [m]P = O.
ExtValuation theta_valuation_of_multiple(const RationalCurve& E, const RationalPoint& P, long p, long m,
                                         long precision = 64);

/// Parameters of the closed form at p. Non-singular points and multiplicative reduction are
/// measured (a_P is fitted on the window); additive singular cases go through fit_closed_form.
ClosedFormParams derive_params(const RationalCurve& E, const RationalPoint& P, long p, const DeriveOptions& opt = {});

/// Valuations v(W_1..W_N) of an exact sequence.
std::vector<ExtValuation> valuations(const EDSSequence<Rational>& W, long p);
/// Valuations of a truncated p-adic sequence, read with the precision guard.
std::vector<ExtValuation> valuations(const EDSSequence<PadicNumber>& W);

/// Fits d, r and the inner form so that every given v(W_n) (index 0 is n = 1) is reproduced.
ClosedFormParams fit_closed_form(const std::vector<ExtValuation>& direct, const LocalData& ctx);
ClosedFormParams fit_closed_form(const std::vector<ExtValuation>& direct, const RationalCurve& E,
                                 const RationalPoint& P, long p);

struct Mismatch {
    long n;
    ExtValuation predicted;
    ExtValuation actual;
};

struct VerificationReport {
    long p = 2;
    long checked_n = 0;
    long fit_window = 0;  ///< 0 when nothing was fitted
    ClosedFormParams params;
    std::vector<ExtValuation> direct;
    std::vector<Mismatch> mismatches;

    bool verified() const { return mismatches.empty(); }
};

/// Compares predict(params, n) with the given valuations for n = 1..direct.size().
std::vector<Mismatch> compare(const ClosedFormParams& params, const std::vector<ExtValuation>& direct);

/// Direct valuations for n <= N, parameters (fitted on n <= N/2 when needed), and comparison for all n <= N.
VerificationReport verify(const RationalCurve& E, const RationalPoint& P, long p, long N, DeriveOptions opt = {});
/// The same over Q_p, with the fit driven by the local invariants of the p-adic model.
VerificationReport verify(const PadicCurve& E, const PadicPoint& P, long N);

/// Pairs (a, b) with 1 <= a, b <= bound such that n ≢ 0 (mod a) implies n^2 ≡ 1 (mod b).
std::vector<std::pair<long, long>> lemma63_pairs(long bound);

/// Whether n_P is allowed for d' = d / gcd(d, r) by the potential-good restrictions.
bool pot_good_np_allowed(long d, const Rational& r, long n_P);

}  // namespace edsval
