#pragma once

#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "edsval/curves.hpp"
#include "edsval/errors.hpp"
#include "edsval/field_traits.hpp"

namespace edsval {

template <class F>
struct DivPolyTriple {
    F psi;
    F phi;
    std::optional<F> omega;  ///< empty when [n]P = O and Ψ_2(P) = 0
};

/// Values Ψ_n(P), φ_n(P), ω_n(P) of the division polynomials at a fixed point, memoised.
/// Ψ_n is evaluated through the index-halving recurrences, so a single large n touches
/// only O(log n) indices while a sweep 1..N reuses every earlier value.
template <class F>
class DivisionValues {
public:
    DivisionValues(const Curve<F>& E, const Point<F>& P) : E_(E), P_(checked(E, P)) { init(); }

    const Curve<F>& curve() const { return E_; }
    const Point<F>& point() const { return P_; }

    /// Ψ_n(P) for any integer n, with Ψ_{-n} = -Ψ_n and Ψ_0 = 0.
    F psi(long n) {
        if (n < 0) return -psi(-n);
        auto it = memo_.find(n);
        if (it != memo_.end()) return it->second;
        F value = compute(n);
        memo_.emplace(n, value);
        return value;
    }

    F phi(long n) {
        const F& x = P_.x();
        const F pn = psi(n);
        return x * pn * pn - psi(n - 1) * psi(n + 1);
    }

    std::optional<F> omega(long n) {
        const F pn = psi(n);
        if (!psi2_zero_) {
            const F pm1 = psi(n - 1), pp1 = psi(n + 1);
            const F num = psi(n + 2) * pm1 * pm1 - psi(n - 2) * pp1 * pp1;
            const F two = field_const(pn, 2);
            return (num / psi2_ - E_.a1() * phi(n) * pn - E_.a3() * pn * pn * pn) / two;
        }
        if (field_is_zero(pn)) return std::nullopt;
        const Point<F> Q = E_.scalar_mul(P_, n);
        return Q.y() * pn * pn * pn;
    }

    DivPolyTriple<F> triple(long n) {
        if (n == 0) throw ArgumentError("division polynomial index must be nonzero");
        return {psi(n), phi(n), omega(n)};
    }

private:
    static const Point<F>& checked(const Curve<F>& E, const Point<F>& P) {
        if (P.is_identity()) throw ArgumentError("division values need an affine point");
        E.require_on_curve(P);
        return P;
    }

    void init() {
        const F& x = P_.x();
        const F& y = P_.y();
        const auto& I = E_.invariants();
        const F zero = field_const(x, 0), one = field_const(x, 1);
        auto k = [&](long v) { return field_const(x, v); };
        psi2_ = k(2) * y + E_.a1() * x + E_.a3();
        if (field_is_exact_zero(psi2_)) {
            psi2_zero_ = true;
        } else if (field_is_zero(psi2_)) {
            throw PrecisionExhausted("Ψ_2(P) is indistinguishable from zero");
        }
        const F x2 = x * x, x3 = x2 * x, x4 = x3 * x;
        const F psi3 = k(3) * x4 + I.b2 * x3 + k(3) * I.b4 * x2 + k(3) * I.b6 * x + I.b8;
        const F x5 = x4 * x, x6 = x5 * x;
        const F psi4 = psi2_ * (k(2) * x6 + I.b2 * x5 + k(5) * I.b4 * x4 + k(10) * I.b6 * x3 + k(10) * I.b8 * x2 +
                                (I.b2 * I.b8 - I.b4 * I.b6) * x + (I.b4 * I.b8 - I.b6 * I.b6));
        memo_.emplace(0, zero);
        memo_.emplace(1, one);
        memo_.emplace(2, psi2_);
        memo_.emplace(3, psi3);
        memo_.emplace(4, psi4);
    }

    F compute(long n) {
        const long m = n / 2;
        if (n % 2 == 1) {
            const F a = psi(m), b = psi(m + 1);
            return psi(m + 2) * a * a * a - psi(m - 1) * b * b * b;
        }
        if (psi2_zero_) return field_const(P_.x(), 0);
        const F a = psi(m - 1), b = psi(m + 1);
        return psi(m) * (psi(m + 2) * a * a - psi(m - 2) * b * b) / psi2_;
    }

    Curve<F> E_;
    Point<F> P_;
    F psi2_ = P_.x();
    bool psi2_zero_ = false;
    std::map<long, F> memo_;
};

template <class F>
DivPolyTriple<F> div_poly_eval(const Curve<F>& E, const Point<F>& P, long n) {
    if (n <= 0) throw ArgumentError("division polynomial index must be positive");
    DivisionValues<F> D(E, P);
    return D.triple(n);
}

/// W_1..W_N of the EDS attached to (E, P); index 0 holds W_0 = 0.
template <class F>
struct EDSSequence {
    std::vector<F> terms;

    long size() const { return static_cast<long>(terms.size()) - 1; }
    /// W_n for |n| <= size(), extended by W_{-n} = -W_n.
    F at(long n) const {
        if (n < 0) return -terms.at(static_cast<std::size_t>(-n));
        return terms.at(static_cast<std::size_t>(n));
    }
};

template <class F>
EDSSequence<F> eds(const Curve<F>& E, const Point<F>& P, long N) {
    if (N < 1) throw ArgumentError("EDS length must be positive");
    DivisionValues<F> D(E, P);
    EDSSequence<F> W;
    W.terms.reserve(static_cast<std::size_t>(N) + 1);
    for (long n = 0; n <= N; ++n) W.terms.push_back(D.psi(n));
    return W;
}

/// [n]P from φ_n/Ψ_n^2 and ω_n/Ψ_n^3.
template <class F>
Point<F> multiple_via_divpoly(const Curve<F>& E, const Point<F>& P, long n) {
    if (n == 0 || P.is_identity()) return Point<F>::identity();
    if (n < 0) return E.negate(multiple_via_divpoly(E, P, -n));
    DivisionValues<F> D(E, P);
    const F psi = D.psi(n);
    if (field_is_zero(psi)) throw TorsionMultiple("Ψ_" + std::to_string(n) + "(P) = 0");
    const auto omega = D.omega(n);
    return Point<F>::affine(D.phi(n) / (psi * psi), *omega / (psi * psi * psi));
}

struct IdentityReport {
    long max_index = 0;
    long three_term_checked = 0;
    long four_term_checked = 0;
    long violations = 0;
    std::vector<std::string> examples;  ///< first few violating index tuples

    bool ok() const { return violations == 0; }
};

namespace detail {

/// Runs both identity families over w, which holds W_{-N}..W_N at offset N.
template <class T, class IsZero>
void check_identities_core(const std::vector<T>& w, long N, IsZero is_zero, long stop_after, IdentityReport& rep) {
    auto note = [&](const std::string& what) {
        ++rep.violations;
        if (rep.examples.size() < 10) rep.examples.push_back(what);
    };
    auto W = [&](long k) -> const T& { return w[static_cast<std::size_t>(k + N)]; };
    auto done = [&] { return stop_after > 0 && rep.violations >= stop_after; };
    T v, t;
    for (long n = 0; n <= N && !done(); ++n)
        for (long m = 0; n + m <= N && !done(); ++m)
            for (long r = 0; m + r <= N && r + n <= N && !done(); ++r) {
                v = W(n + m) * W(n - m) * (W(r) * W(r));
                t = W(m + r) * W(m - r) * (W(n) * W(n));
                v += t;
                t = W(r + n) * W(r - n) * (W(m) * W(m));
                v += t;
                ++rep.three_term_checked;
                if (!is_zero(v))
                    note("(n,m,r)=(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(r) + ")");
            }

    for (long s = 0; s <= N && !done(); ++s)
        for (long n = 0; n + s <= N && !done(); ++n)
            for (long m = 0; n + m + s <= N && !done(); ++m)
                for (long r = 0; m + r + s <= N && r + n + s <= N && !done(); ++r) {
                    v = W(n + m + s) * W(n - m) * (W(r + s) * W(r));
                    t = W(m + r + s) * W(m - r) * (W(n + s) * W(n));
                    v += t;
                    t = W(r + n + s) * W(r - n) * (W(m + s) * W(m));
                    v += t;
                    ++rep.four_term_checked;
                    if (!is_zero(v))
                        note("(n,m,r,s)=(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(r) +
                             "," + std::to_string(s) + ")");
                }
}

}  // namespace detail

/// Checks the three-term EDS relation and the four-parameter recurrence on every index tuple
/// whose indices stay within max_index (clamped to the sequence length). Rational sequences are
/// scaled to integers first. A positive `stop_after` ends the scan once that many violations are seen.
template <class F>
IdentityReport check_eds_identities(const EDSSequence<F>& W, long max_index, long stop_after = 0) {
    IdentityReport rep;
    const long N = std::min(max_index, W.size());
    rep.max_index = N;
    if constexpr (std::is_same_v<F, Rational>) {
        Integer L = 1;
        for (long k = 0; k <= N; ++k) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), W.terms[static_cast<std::size_t>(k)].get_den_mpz_t());
        std::vector<Integer> w;
        w.reserve(static_cast<std::size_t>(2 * N + 1));
        for (long k = -N; k <= N; ++k) {
            const Rational& q = W.terms[static_cast<std::size_t>(k < 0 ? -k : k)];
            Integer z = q.get_num() * (L / q.get_den());
            w.push_back(k < 0 ? Integer(-z) : z);
        }
        detail::check_identities_core(w, N, [](const Integer& z) { return sgn(z) == 0; }, stop_after, rep);
    } else {
        std::vector<F> w;
        w.reserve(static_cast<std::size_t>(2 * N + 1));
        for (long k = -N; k <= N; ++k) w.push_back(W.at(k));
        detail::check_identities_core(w, N, [](const F& x) { return field_is_zero(x); }, stop_after, rep);
    }
    return rep;
}

struct Rank7Result {
    Rational b, c;
    RationalCurve model;
    RationalPoint point;
    EDSSequence<Rational> sequence;
    std::vector<long> mismatches;  ///< indices n where W_n differs from the closed form
};

/// Sign of the closed form for the rank-7 torsion EDS; 0 when 7 | n.
int rank7_sign(long n);

/// Tate normal form y^2 + (1-c)xy - by = x^3 - bx^2 with b = α^3 - α^2, c = α^2 - α, where
/// (0,0) has order 7 (checked with the group law), together with the comparison of its EDS
/// against ε α^{R_n(2,7)} (α-1)^{R_n(1,7)} for n <= N.
Rank7Result rank7_torsion_eds(const Rational& alpha, long N);

}  // namespace edsval
