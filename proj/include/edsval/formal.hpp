#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "edsval/curves.hpp"
#include "edsval/errors.hpp"
#include "edsval/field_traits.hpp"
#include "edsval/numbers.hpp"

namespace edsval {

/// Univariate power series c_0 + c_1 T + ... + c_D T^D + O(T^{D+1}).
template <class K>
class PowerSeries {
public:
    PowerSeries(const K& like, long degree) : c_(static_cast<std::size_t>(check(degree)) + 1, field_const(like, 0)) {}

    static PowerSeries variable(const K& like, long degree) {
        PowerSeries s(like, degree);
        if (degree >= 1) s.c_[1] = field_const(like, 1);
        return s;
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const K& operator[](long i) const { return c_.at(static_cast<std::size_t>(i)); }
    K& operator[](long i) { return c_.at(static_cast<std::size_t>(i)); }

    PowerSeries constant(const K& v) const {
        PowerSeries s(v, degree());
        s.c_[0] = v;
        return s;
    }

    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) {
        a.align(b);
        for (long i = 0; i <= a.degree(); ++i) a[i] = a[i] + b[i];
        return a;
    }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) {
        a.align(b);
        for (long i = 0; i <= a.degree(); ++i) a[i] = a[i] - b[i];
        return a;
    }
    friend PowerSeries operator-(PowerSeries a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend PowerSeries operator*(const K& k, PowerSeries a) {
        for (auto& x : a.c_) x = k * x;
        return a;
    }
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        const long D = std::min(a.degree(), b.degree());
        PowerSeries out(a.c_[0], D);
        const long la = a.low(), lb = b.low();
        for (long i = la; i <= D; ++i) {
            if (field_is_zero(a[i])) continue;
            for (long j = lb; i + j <= D; ++j) out[i + j] = out[i + j] + a[i] * b[j];
        }
        return out;
    }

    /// 1/s for a series with invertible constant term.
    PowerSeries inverse() const {
        if (field_is_zero(c_[0])) throw DivisionByZero("power series with zero constant term is not invertible");
        PowerSeries out(c_[0], degree());
        const K inv0 = field_const(c_[0], 1) / c_[0];
        out[0] = inv0;
        for (long n = 1; n <= degree(); ++n) {
            K acc = field_const(c_[0], 0);
            for (long k = 1; k <= n; ++k) acc = acc + c_[static_cast<std::size_t>(k)] * out[n - k];
            out[n] = -acc * inv0;
        }
        return out;
    }

    /// this(inner) for inner without constant term.
    PowerSeries compose(const PowerSeries& inner) const {
        if (!field_is_zero(inner[0])) throw ArgumentError("composition needs an inner series without constant term");
        const long D = std::min(degree(), inner.degree());
        PowerSeries out = inner.constant(c_[static_cast<std::size_t>(D)]).truncated(D);
        for (long i = D - 1; i >= 0; --i) out = out * inner.truncated(D) + inner.constant(c_[static_cast<std::size_t>(i)]).truncated(D);
        return out;
    }

    PowerSeries truncated(long D) const {
        PowerSeries out(c_[0], std::min(D, degree()));
        for (long i = 0; i <= out.degree(); ++i) out[i] = c_[static_cast<std::size_t>(i)];
        return out;
    }

    /// Index of the first nonzero coefficient; degree()+1 when all vanish.
    long low() const {
        for (long i = 0; i <= degree(); ++i)
            if (!field_is_zero(c_[static_cast<std::size_t>(i)])) return i;
        return degree() + 1;
    }

    bool operator==(const PowerSeries& o) const {
        if (degree() != o.degree()) return false;
        for (long i = 0; i <= degree(); ++i)
            if (!field_equal((*this)[i], o[i])) return false;
        return true;
    }

    std::string to_string(const std::string& var = "T") const;

private:
    static long check(long degree) {
        if (degree < 0) throw ArgumentError("series degree must be non-negative");
        return degree;
    }
    void align(const PowerSeries& b) {
        if (b.degree() < degree()) c_.erase(c_.begin() + b.degree() + 1, c_.end());
    }

    std::vector<K> c_;
};

/// Bivariate series Σ c_{ij} X^i Y^j truncated at total degree D.
template <class K>
class BivariateSeries {
public:
    BivariateSeries(const K& like, long degree) : D_(degree), zero_(field_const(like, 0)) {
        if (degree < 0) throw ArgumentError("series degree must be non-negative");
        c_.assign(static_cast<std::size_t>((D_ + 1) * (D_ + 2) / 2), zero_);
    }

    static BivariateSeries x_var(const K& like, long degree) {
        BivariateSeries s(like, degree);
        if (degree >= 1) s.at(1, 0) = field_const(like, 1);
        return s;
    }
    static BivariateSeries y_var(const K& like, long degree) {
        BivariateSeries s(like, degree);
        if (degree >= 1) s.at(0, 1) = field_const(like, 1);
        return s;
    }

    long degree() const { return D_; }
    const K& coeff(long i, long j) const {
        if (i < 0 || j < 0 || i + j > D_) return zero_;
        return c_[index(i, j)];
    }
    K& at(long i, long j) {
        if (i < 0 || j < 0 || i + j > D_) throw ArgumentError("coefficient index beyond the truncation degree");
        return c_[index(i, j)];
    }

    BivariateSeries constant(const K& v) const {
        BivariateSeries s(v, D_);
        s.at(0, 0) = v;
        return s;
    }

    friend BivariateSeries operator+(BivariateSeries a, const BivariateSeries& b) {
        a.require_same(b);
        for (std::size_t k = 0; k < a.c_.size(); ++k) a.c_[k] = a.c_[k] + b.c_[k];
        return a;
    }
    friend BivariateSeries operator-(BivariateSeries a, const BivariateSeries& b) {
        a.require_same(b);
        for (std::size_t k = 0; k < a.c_.size(); ++k) a.c_[k] = a.c_[k] - b.c_[k];
        return a;
    }
    friend BivariateSeries operator-(BivariateSeries a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend BivariateSeries operator*(const K& k, BivariateSeries a) {
        for (auto& x : a.c_) x = k * x;
        return a;
    }
    friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
        a.require_same(b);
        BivariateSeries out(a.zero_, a.D_);
        for (long i1 = 0; i1 <= a.D_; ++i1)
            for (long j1 = 0; i1 + j1 <= a.D_; ++j1) {
                const K& x = a.c_[index(i1, j1)];
                if (field_is_zero(x)) continue;
                for (long i2 = 0; i1 + j1 + i2 <= a.D_; ++i2)
                    for (long j2 = 0; i1 + j1 + i2 + j2 <= a.D_; ++j2) {
                        const K& y = b.c_[index(i2, j2)];
                        if (field_is_zero(y)) continue;
                        K& t = out.c_[index(i1 + i2, j1 + j2)];
                        t = t + x * y;
                    }
            }
        return out;
    }

    BivariateSeries inverse() const {
        const K& c0 = coeff(0, 0);
        if (field_is_zero(c0)) throw DivisionByZero("power series with zero constant term is not invertible");
        const K inv0 = field_const(c0, 1) / c0;
        BivariateSeries u = *this;
        u.at(0, 0) = zero_;
        u = (-inv0) * u;
        // 1/(c0(1 - u)) = inv0 Σ u^k; u has no constant term so k <= D suffices.
        BivariateSeries acc = constant(field_const(c0, 1));
        BivariateSeries power = acc;
        for (long k = 1; k <= D_; ++k) {
            power = power * u;
            acc = acc + power;
        }
        return inv0 * acc;
    }

    bool operator==(const BivariateSeries& o) const {
        if (D_ != o.D_) return false;
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (!field_equal(c_[k], o.c_[k])) return false;
        return true;
    }

    std::string to_string() const;

private:
    static std::size_t index(long i, long j) {
        const long t = i + j;
        return static_cast<std::size_t>(t * (t + 1) / 2 + j);
    }
    void require_same(const BivariateSeries& b) const {
        if (b.D_ != D_) throw ArgumentError("bivariate series of different truncation degree");
    }

    long D_;
    K zero_;
    std::vector<K> c_;
};

/// Weierstrass coefficients (a1, a2, a3, a4, a6) in the coefficient domain K.
template <class K>
using FormalCoefficients = std::array<K, 5>;

FormalCoefficients<Rational> formal_coefficients(const RationalCurve& E);
/// Coefficients reduced mod p; the model must be p-integral.
FormalCoefficients<PrimeFieldElement> formal_coefficients_mod_p(const RationalCurve& E, long p);

/// w(z) = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3 to degree D.
template <class K>
PowerSeries<K> formal_w(const FormalCoefficients<K>& a, long D) {
    const K& like = a[0];
    const PowerSeries<K> z = PowerSeries<K>::variable(like, D);
    const PowerSeries<K> z2 = z * z, z3 = z2 * z;
    PowerSeries<K> w(like, D);
    for (long it = 0; it <= D; ++it) {
        const PowerSeries<K> w2 = w * w;
        w = z3 + a[0] * (z * w) + a[1] * (z2 * w) + a[2] * w2 + a[3] * (z * w2) + a[4] * (w2 * w);
    }
    return w;
}

/// F(A, B) for series A, B without constant term, using the chord through (A, w(A)), (B, w(B)).
/// w must be known one degree beyond A and B, since λ loses a degree.
template <class S, class K>
S formal_add_series(const FormalCoefficients<K>& a, const PowerSeries<K>& w, const S& A, const S& B) {
    const long D = w.degree();
    const S zero = A.constant(field_const(a[0], 0));
    const S one = A.constant(field_const(a[0], 1));
    // λ = Σ w_k S_k with S_k = Σ_{i+j=k-1} A^i B^j; w(A) = Σ w_k A^k.
    S lambda = zero, wA = zero;
    S Sk = one, Bpow = one, Apow = A;
    for (long k = 1; k <= D; ++k) {
        if (k > 1) {
            Bpow = Bpow * B;
            Sk = A * Sk + Bpow;
            Apow = Apow * A;
        }
        if (field_is_zero(w[k])) continue;
        lambda = lambda + w[k] * Sk;
        wA = wA + w[k] * Apow;
    }
    const S nu = wA - lambda * A;
    const K two = field_const(a[0], 2), three = field_const(a[0], 3);
    const S l2 = lambda * lambda;
    // z1 + z2 + z3 is minus the ratio of the z^2 and z^3 coefficients after substituting w = λz + ν
    const S num = a[0] * lambda + a[1] * nu + a[2] * l2 + (two * a[3]) * (lambda * nu) + (three * a[4]) * (l2 * nu);
    const S den = one + a[1] * lambda + a[3] * l2 + a[4] * (l2 * lambda);
    const S z3 = zero - A - B - num * den.inverse();
    const S w3 = lambda * z3 + nu;
    return -(z3 * (one - a[0] * z3 - a[2] * w3).inverse());
}

/// i(T) applied to a series: -M / (1 - a1 M - a3 w(M)).
template <class K>
PowerSeries<K> formal_negate_series(const FormalCoefficients<K>& a, const PowerSeries<K>& w, const PowerSeries<K>& M) {
    const PowerSeries<K> one = M.constant(field_const(a[0], 1));
    return -(M * (one - a[0] * M - a[2] * w.compose(M)).inverse());
}

/// [m]T to degree D over K.
template <class K>
PowerSeries<K> mult_series_generic(const FormalCoefficients<K>& a, long m, long D) {
    if (D < 1) throw ArgumentError("multiplication series needs degree >= 1");
    const PowerSeries<K> w = formal_w(a, D + 1);
    const PowerSeries<K> T = PowerSeries<K>::variable(a[0], D);
    unsigned long k = m < 0 ? static_cast<unsigned long>(-(m + 1)) + 1UL : static_cast<unsigned long>(m);
    PowerSeries<K> acc(a[0], D), base = T;
    bool started = false;
    while (k != 0) {
        if (k & 1UL) {
            acc = started ? formal_add_series(a, w, acc, base) : base;
            started = true;
        }
        k >>= 1;
        if (k != 0) base = formal_add_series(a, w, base, base);
    }
    if (m < 0) acc = formal_negate_series(a, w, acc);
    return acc;
}

/// The formal group law F(X, Y) of the model through total degree D.
BivariateSeries<Rational> formal_group_law(const RationalCurve& E, long D);

/// [m]T over Q through T^D.
PowerSeries<Rational> mult_series(const RationalCurve& E, long m, long D);

struct BHResult {
    long b = 1;
    long h = 0;
    bool low_degree = false;  ///< no p-unit coefficient within the inspected degree
};

/// (b, h) from the series [p]T: b is the first exponent whose coefficient is not divisible by p,
/// h the valuation of that coefficient. Needs degree >= p^2 + 1.
BHResult extract_b_h(const PowerSeries<Rational>& p_series, long p);
/// Same scan on [p]T reduced mod p (first nonzero coefficient, h = 0).
BHResult extract_b_h(const PowerSeries<PrimeFieldElement>& p_series_mod_p, long p);

/// Largest p for which formal_b_h expands [p]T (degree p^2 + 2 over F_p).
inline constexpr long kFormalPrimeCap = 13;

enum class Provenance { MEASURED, FITTED, ASSUMED };
std::string to_string(Provenance p);

struct FormalBH {
    long b;
    long h;
    Provenance provenance;
};

/// (b, h) for a p-integral model: computed from [p]T mod p for p <= kFormalPrimeCap, otherwise
/// b = p, h = 0 marked ASSUMED.
FormalBH formal_b_h(const RationalCurve& E, long p);

/// Parameters of the sequence S_n(p, b, d, h, s, w).
struct SParams {
    long p = 2;
    long b = 1;
    long d = 1;
    long h = 0;
    ExtValuation s = 1;
    ExtValuation w = 0;

    /// Throws ArgumentError unless the parameter constraints hold.
    void validate() const;
    /// Step index j (0 when b = 1 or s = ∞).
    long j() const;
    /// d = b^j((b-1)s + h): the only case in which w may be nonzero.
    bool equality_case() const;
};

/// Σ_{i<k} b^i.
long geometric_sum(long b, long k);

ExtValuation s_eval(const SParams& params, long n);

/// Constants (A, B) with S_n <= A + B log n for all n >= 1 (s, w finite).
std::pair<double, double> s_growth_bound(const SParams& params);

/// v(Θ(P)) = v(x) - v(y) for P in the kernel of reduction (v(x) < 0).
ExtValuation theta_valuation(const RationalCurve& E, const RationalPoint& P, long p);
ExtValuation theta_valuation(const PadicCurve& E, const PadicPoint& P);

struct Lemma41Check {
    long p = 2;
    long b = 1, h = 0, j = 0;
    ExtValuation w = 0;
    std::vector<ExtValuation> measured;   ///< a_k = v(Θ([p^k]z)), k = 0..kmax
    std::vector<ExtValuation> predicted;  ///< S_{p^k}(p, b, 1, h, a_0, w)
    bool ok() const { return measured == predicted; }
};

/// Measures a_k = v(Θ([p^k]z)) for z in the kernel of reduction and compares with S_{p^k}
/// where (b, h) come from the formal group and w from a_{j+1} - a_j - 1 in the equality case.
/// Multiples are taken in truncated Q_p arithmetic at `precision` digits.
Lemma41Check lemma41_check(const RationalCurve& E, const RationalPoint& z, long p, long kmax, long precision = 200);

template <class K>
std::string PowerSeries<K>::to_string(const std::string& var) const {
    std::string out;
    for (long i = 0; i <= degree(); ++i) {
        const K& c = (*this)[i];
        if (field_is_zero(c)) continue;
        if (!out.empty()) out += " + ";
        out += "(" + field_to_string(c) + ")";
        if (i >= 1) out += "*" + var;
        if (i >= 2) out += "^" + std::to_string(i);
    }
    if (out.empty()) out = "0";
    return out + " + O(" + var + "^" + std::to_string(degree() + 1) + ")";
}

template <class K>
std::string BivariateSeries<K>::to_string() const {
    std::string out;
    for (long t = 0; t <= D_; ++t)
        for (long j = 0; j <= t; ++j) {
            const K& c = coeff(t - j, j);
            if (field_is_zero(c)) continue;
            if (!out.empty()) out += " + ";
            out += "(" + field_to_string(c) + ")*X^" + std::to_string(t - j) + "*Y^" + std::to_string(j);
        }
    if (out.empty()) out = "0";
    return out + " + O(deg " + std::to_string(D_ + 1) + ")";
}

}  // namespace edsval
