#pragma once

#include <string>

#include "edsval/numbers.hpp"

namespace edsval {

/// Truncated element of Q_p.
///
/// Three shapes are possible: an exact rational, an inexact value
/// p^val * unit + O(p^(val + rel)), or a precision-limited zero O(p^abs).
class PadicNumber {
public:
    enum class Kind { Exact, Inexact, Zero };

    /// Exact value; the rational is embedded without loss.
    PadicNumber(long p, const Rational& value);
    PadicNumber(long p, long value) : PadicNumber(p, Rational(value)) {}

    /// p^val * unit + O(p^(val + rel)); unit is reduced mod p^rel and must be a p-unit.
    static PadicNumber inexact(long p, long val, const Integer& unit, long rel);
    /// O(p^abs).
    static PadicNumber zero_to(long p, long abs);
    /// Rational q truncated to `rel` significant digits (exact zero stays exact).
    static PadicNumber approx(long p, const Rational& q, long rel);

    long prime() const { return p_; }
    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ == Kind::Exact; }
    bool is_exact_zero() const { return kind_ == Kind::Exact && exact_ == 0; }
    bool is_precision_zero() const { return kind_ == Kind::Zero; }
    /// True for exact zero and for precision-limited zero.
    bool is_zero() const { return is_exact_zero() || is_precision_zero(); }

    /// Valuation; infinity for exact zero. For O(p^abs) the result is the lower bound `abs`.
    ExtValuation valuation() const;
    /// Absolute precision (infinity for exact values).
    ExtValuation abs_precision() const;
    /// Significant digits (infinity for exact values, 0 for precision-limited zero).
    ExtValuation rel_precision() const;

    /// Unit part modulo p^rel (inexact values only).
    const Integer& unit() const { return unit_; }
    const Rational& exact_value() const { return exact_; }

    /// Representative in Z[1/p] congruent to the value to its absolute precision.
    Rational lift() const;
    /// Residue in F_p of a value with valuation >= 0; throws PrecisionExhausted when unknown.
    long residue() const;

    /// Drops digits so that at most `rel` significant digits remain.
    PadicNumber truncated(long rel) const;

    friend PadicNumber operator+(const PadicNumber& x, const PadicNumber& y);
    friend PadicNumber operator-(const PadicNumber& x, const PadicNumber& y);
    friend PadicNumber operator*(const PadicNumber& x, const PadicNumber& y);
    friend PadicNumber operator/(const PadicNumber& x, const PadicNumber& y);
    friend PadicNumber operator-(const PadicNumber& x);

    PadicNumber& operator+=(const PadicNumber& y) { return *this = *this + y; }
    PadicNumber& operator-=(const PadicNumber& y) { return *this = *this - y; }
    PadicNumber& operator*=(const PadicNumber& y) { return *this = *this * y; }
    PadicNumber& operator/=(const PadicNumber& y) { return *this = *this / y; }

    /// e.g. "2^3 * 5 + O(2^13)", or the exact rational.
    std::string to_string() const;

private:
    PadicNumber() = default;

    long p_ = 2;
    Kind kind_ = Kind::Exact;
    Rational exact_;
    long val_ = 0;
    Integer unit_;
    long rel_ = 0;
    long abs_ = 0;
};

/// Valuation of x guarded against precision loss: throws PrecisionExhausted when x is a
/// precision-limited zero or carries fewer than `min_rel` significant digits.
ExtValuation guarded_valuation(const PadicNumber& x, long min_rel = 8);

/// Square root r of a with r^2 = a to `target_precision` significant digits.
/// The root is canonicalised to r = 1 mod 4 for p = 2 and to the smaller residue mod p
/// for odd p. Throws NoSquareRoot for non-squares.
PadicNumber hensel_sqrt(const PadicNumber& a, long target_precision);

}  // namespace edsval
