#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace edsval {

using Integer = mpz_class;
using Rational = mpq_class;

/// An element of Z ∪ {∞}. Infinity absorbs addition and exceeds every integer.
class ExtValuation {
public:
    constexpr ExtValuation() = default;
    constexpr ExtValuation(long v) : value_(v) {}  // NOLINT: implicit by design of Z ⊂ Z ∪ {∞}

    static constexpr ExtValuation infinity() {
        ExtValuation v;
        v.value_.reset();
        return v;
    }

    constexpr bool is_infinite() const { return !value_.has_value(); }
    constexpr bool is_finite() const { return value_.has_value(); }

    /// Throws ArgumentError on infinity.
    long value() const;

    friend ExtValuation operator+(ExtValuation a, ExtValuation b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return ExtValuation(*a.value_ + *b.value_);
    }
    /// a - b for finite b; ∞ - finite = ∞.
    friend ExtValuation operator-(ExtValuation a, ExtValuation b);
    /// k·v for k > 0 (k·∞ = ∞); k = 0 yields 0.
    friend ExtValuation operator*(long k, ExtValuation v);

    friend constexpr bool operator==(const ExtValuation& a, const ExtValuation& b) {
        return a.value_ == b.value_;
    }
    friend constexpr std::strong_ordering operator<=>(const ExtValuation& a, const ExtValuation& b) {
        if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
        if (a.is_infinite()) return std::strong_ordering::greater;
        if (b.is_infinite()) return std::strong_ordering::less;
        return *a.value_ <=> *b.value_;
    }

    /// "inf" or the decimal integer.
    std::string to_string() const;

private:
    std::optional<long> value_{0};
};

std::ostream& operator<<(std::ostream& os, const ExtValuation& v);

bool is_prime(const Integer& n);
bool is_prime(long n);
void require_prime(long p);

/// Exponent of p in x; infinity for x = 0.
ExtValuation vp(const Integer& x, long p);
ExtValuation vp(const Rational& x, long p);

/// Removes every factor p from x (x != 0) and returns the exponent removed.
long remove_factor(Integer& x, long p);

/// floor(a / b) for b != 0.
Integer floor_div(const Integer& a, const Integer& b);
/// Least non-negative residue of a modulo m (m != 0).
Integer mod_nonneg(const Integer& a, const Integer& m);
long mod_nonneg(long a, long m);

Integer floor(const Rational& q);
/// num/den in lowest terms; throws DivisionByZero for den = 0.
Rational fraction(const Integer& num, const Integer& den);

/// Canonical "num/den" text; integers print as "num/1" when `always_fraction`.
std::string to_fraction_string(const Rational& q, bool always_fraction = true);

/// Accepts "n", "-n", "n/d" with decimal integers; throws ArgumentError otherwise.
Rational parse_rational(std::string_view text);

/// Natural logarithm of |x| for x != 0, valid for integers far beyond double range.
double log_abs(const Integer& x);

/// h(q) = log max(|num|, |den|).
double naive_height(const Rational& q);

/// Trial-division factorisation of |n| over primes below `bound`; the unfactored
/// cofactor (1 when fully factored) is returned through `cofactor`.
std::string factor_string(const Integer& n, long bound, Integer* cofactor = nullptr);

/// Element of F_p.
class PrimeFieldElement {
public:
    PrimeFieldElement(long p, long residue);
    PrimeFieldElement(long p, const Integer& residue);

    long prime() const { return p_; }
    long residue() const { return r_; }
    bool is_zero() const { return r_ == 0; }

    PrimeFieldElement inverse() const;

    friend PrimeFieldElement operator+(const PrimeFieldElement& a, const PrimeFieldElement& b);
    friend PrimeFieldElement operator-(const PrimeFieldElement& a, const PrimeFieldElement& b);
    friend PrimeFieldElement operator*(const PrimeFieldElement& a, const PrimeFieldElement& b);
    friend PrimeFieldElement operator/(const PrimeFieldElement& a, const PrimeFieldElement& b);
    friend PrimeFieldElement operator-(const PrimeFieldElement& a);
    friend bool operator==(const PrimeFieldElement& a, const PrimeFieldElement& b) = default;

private:
    long p_;
    long r_;
};

/// Reduction of a p-integral rational into F_p; throws ArgumentError if vp(q) < 0.
PrimeFieldElement reduce(const Rational& q, long p);

}  // namespace edsval
