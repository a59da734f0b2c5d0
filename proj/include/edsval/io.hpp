#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "edsval/curves.hpp"
#include "edsval/heights.hpp"
#include "edsval/reduction.hpp"

namespace edsval {

using Json = nlohmann::ordered_json;

/// Inline JSON when the text starts with '{' or '[', otherwise the contents of that file.
Json load_json(const std::string& text_or_path);

/// Rational from a JSON integer or a "num/den" string.
Rational rational_from_json(const Json& value);

/// Curve from {"a": [a1, a2, a3, a4, a6]} or the bare array.
RationalCurve curve_from_json(const Json& value);
/// Point from [x, y] or "O"; also accepts {"P": ...} wrapping.
RationalPoint point_from_json(const Json& value);

/// p-adic entries additionally accept {"sqrt": q, "add": r} for sqrt(q) + r, with the root
/// Hensel-lifted to `precision` digits.
PadicNumber padic_from_json(const Json& value, long p, long precision);
PadicCurve padic_curve_from_json(const Json& value, long p, long precision);
/// A null y on a model with a1 = a3 = 0 is solved from y^2 = x^3 + a2 x^2 + a4 x + a6.
PadicPoint padic_point_from_json(const Json& value, const PadicCurve& E, long precision);

/// null for infinity, integer otherwise.
Json to_json(ExtValuation v);
Json to_json(const std::vector<ExtValuation>& vs);
Json to_json(const ClosedFormParams& params);
Json to_json(const VerificationReport& report);
Json to_json(const Lemma104Report& report);
Json to_json(const IntegralMultiplesReport& report);

/// Value rounded to 12 significant digits so that output is reproducible byte for byte.
double round12(double x);
std::string format12(double x);

/// Primes dividing the numerator or denominator of Δ (trial division below `bound`) together
/// with the primes dividing D_n for n <= 10, ascending.
std::vector<long> auto_primes(const RationalCurve& E, const RationalPoint& P, long bound = 1000000);

}  // namespace edsval
