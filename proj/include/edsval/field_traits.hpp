#pragma once

#include "edsval/numbers.hpp"
#include "edsval/padic.hpp"

namespace edsval {

// Uniform access to the scalar domains used by the generic curve code:
// Rational, PadicNumber and PrimeFieldElement.

inline Rational field_const(const Rational&, long v) { return Rational(v); }
inline PadicNumber field_const(const PadicNumber& like, long v) { return PadicNumber(like.prime(), v); }
inline PrimeFieldElement field_const(const PrimeFieldElement& like, long v) {
    return PrimeFieldElement(like.prime(), v);
}

inline bool field_is_zero(const Rational& x) { return x == 0; }
inline bool field_is_zero(const PadicNumber& x) { return x.is_zero(); }
inline bool field_is_zero(const PrimeFieldElement& x) { return x.is_zero(); }

/// Zero known exactly, as opposed to a value that is only zero to the working precision.
inline bool field_is_exact_zero(const Rational& x) { return x == 0; }
inline bool field_is_exact_zero(const PadicNumber& x) { return x.is_exact_zero(); }
inline bool field_is_exact_zero(const PrimeFieldElement& x) { return x.is_zero(); }

template <class F>
bool field_equal(const F& x, const F& y) {
    const F d = x - y;
    return field_is_zero(d);
}

inline std::string field_to_string(const Rational& x) { return to_fraction_string(x, false); }
inline std::string field_to_string(const PadicNumber& x) { return x.to_string(); }
inline std::string field_to_string(const PrimeFieldElement& x) { return std::to_string(x.residue()); }

}  // namespace edsval
