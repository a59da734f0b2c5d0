#include "edsval/padic.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "edsval/errors.hpp"

namespace edsval {

namespace {

Integer ppow(long p, long k) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(std::max(k, 0L)));
    return r;
}

Integer invert_mod(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw DivisionByZero("non-invertible residue");
    return r;
}

// Unit part of a nonzero rational q = p^v * n/d modulo p^rel.
Integer unit_of(const Rational& q, long p, long rel, long* val) {
    Integer n = q.get_num();
    Integer d = q.get_den();
    const long vn = remove_factor(n, p);
    const long vd = remove_factor(d, p);
    *val = vn - vd;
    const Integer m = ppow(p, rel);
    return mod_nonneg(Integer(n * invert_mod(d, m)), m);
}

constexpr long kInf = std::numeric_limits<long>::max();

void check_same_prime(const PadicNumber& x, const PadicNumber& y) {
    if (x.prime() != y.prime()) throw PrimeMismatch("p-adic operands over different primes");
}

long abs_of(const PadicNumber& x) {
    const auto a = x.abs_precision();
    return a.is_infinite() ? kInf : a.value();
}

}  // namespace

PadicNumber::PadicNumber(long p, const Rational& value) : p_(p), kind_(Kind::Exact), exact_(value) {
    require_prime(p);
}

PadicNumber PadicNumber::inexact(long p, long val, const Integer& unit, long rel) {
    if (rel <= 0) return zero_to(p, val);
    PadicNumber x;
    x.p_ = p;
    x.kind_ = Kind::Inexact;
    x.val_ = val;
    x.rel_ = rel;
    x.unit_ = mod_nonneg(unit, ppow(p, rel));
    if (mpz_divisible_ui_p(x.unit_.get_mpz_t(), static_cast<unsigned long>(p)) != 0)
        throw ArgumentError("p-adic unit part divisible by p");
    return x;
}

PadicNumber PadicNumber::zero_to(long p, long abs) {
    PadicNumber x;
    x.p_ = p;
    x.kind_ = Kind::Zero;
    x.abs_ = abs;
    return x;
}

PadicNumber PadicNumber::approx(long p, const Rational& q, long rel) {
    require_prime(p);
    if (q == 0) return PadicNumber(p, q);
    long v = 0;
    const Integer u = unit_of(q, p, rel, &v);
    return inexact(p, v, u, rel);
}

ExtValuation PadicNumber::valuation() const {
    switch (kind_) {
        case Kind::Exact: return vp(exact_, p_);
        case Kind::Inexact: return ExtValuation(val_);
        case Kind::Zero: break;
    }
    return ExtValuation(abs_);
}

ExtValuation PadicNumber::abs_precision() const {
    switch (kind_) {
        case Kind::Exact: return ExtValuation::infinity();
        case Kind::Inexact: return ExtValuation(val_ + rel_);
        case Kind::Zero: break;
    }
    return ExtValuation(abs_);
}

ExtValuation PadicNumber::rel_precision() const {
    switch (kind_) {
        case Kind::Exact: return ExtValuation::infinity();
        case Kind::Inexact: return ExtValuation(rel_);
        case Kind::Zero: break;
    }
    return ExtValuation(0);
}

Rational PadicNumber::lift() const {
    switch (kind_) {
        case Kind::Exact: return exact_;
        case Kind::Zero: return Rational(0);
        case Kind::Inexact: break;
    }
    if (val_ >= 0) return Rational(Integer(unit_ * ppow(p_, val_)));
    Rational r(unit_, ppow(p_, -val_));
    r.canonicalize();
    return r;
}

long PadicNumber::residue() const {
    switch (kind_) {
        case Kind::Exact: return reduce(exact_, p_).residue();
        case Kind::Zero:
            if (abs_ >= 1) return 0;
            throw PrecisionExhausted("residue of O(p^" + std::to_string(abs_) + ") is unknown");
        case Kind::Inexact: break;
    }
    if (val_ < 0) throw ArgumentError("residue of a non-integral p-adic number");
    if (val_ > 0) return 0;
    return mod_nonneg(unit_, Integer(p_)).get_si();
}

PadicNumber PadicNumber::truncated(long rel) const {
    switch (kind_) {
        case Kind::Exact: return approx(p_, exact_, rel);
        case Kind::Zero: return *this;
        case Kind::Inexact: break;
    }
    return inexact(p_, val_, unit_, std::min(rel, rel_));
}

PadicNumber operator+(const PadicNumber& x, const PadicNumber& y) {
    check_same_prime(x, y);
    const long p = x.p_;
    if (x.is_exact() && y.is_exact()) return PadicNumber(p, x.exact_ + y.exact_);
    const long A = std::min(abs_of(x), abs_of(y));

    struct Term {
        const PadicNumber* n;
        long v;
    };
    std::vector<Term> terms;
    for (const PadicNumber* n : {&x, &y}) {
        if (n->is_zero()) continue;
        terms.push_back({n, n->valuation().value()});
    }
    if (terms.empty()) return PadicNumber::zero_to(p, A);
    long m = terms[0].v;
    for (const auto& t : terms) m = std::min(m, t.v);
    if (A <= m) return PadicNumber::zero_to(p, A);

    const Integer M = ppow(p, A - m);
    Integer S = 0;
    for (const auto& t : terms) {
        const long digits = A - t.v;
        if (digits <= 0) continue;
        Integer u;
        if (t.n->is_exact()) {
            long v = 0;
            u = unit_of(t.n->exact_, p, digits, &v);
        } else {
            u = t.n->unit_;
        }
        S += u * ppow(p, t.v - m);
    }
    S = mod_nonneg(S, M);
    if (S == 0) return PadicNumber::zero_to(p, A);
    const long k = remove_factor(S, p);
    return PadicNumber::inexact(p, m + k, S, A - m - k);
}

PadicNumber operator-(const PadicNumber& x) {
    PadicNumber r = x;
    switch (x.kind_) {
        case PadicNumber::Kind::Exact: r.exact_ = -x.exact_; break;
        case PadicNumber::Kind::Inexact: r.unit_ = mod_nonneg(Integer(-x.unit_), ppow(x.p_, x.rel_)); break;
        case PadicNumber::Kind::Zero: break;
    }
    return r;
}

PadicNumber operator-(const PadicNumber& x, const PadicNumber& y) { return x + (-y); }

PadicNumber operator*(const PadicNumber& x, const PadicNumber& y) {
    check_same_prime(x, y);
    const long p = x.p_;
    if (x.is_exact() && y.is_exact()) return PadicNumber(p, x.exact_ * y.exact_);
    if (x.is_exact_zero() || y.is_exact_zero()) return PadicNumber(p, 0L);
    if (x.is_precision_zero() || y.is_precision_zero()) {
        const long a = x.valuation().value() + y.valuation().value();
        return PadicNumber::zero_to(p, a);
    }
    const long v = x.valuation().value() + y.valuation().value();
    const long rel = std::min(x.is_exact() ? kInf : x.rel_, y.is_exact() ? kInf : y.rel_);
    auto unit = [&](const PadicNumber& n) {
        if (!n.is_exact()) return n.unit_;
        long dummy = 0;
        return unit_of(n.exact_, p, rel, &dummy);
    };
    return PadicNumber::inexact(p, v, Integer(unit(x) * unit(y)), rel);
}

PadicNumber operator/(const PadicNumber& x, const PadicNumber& y) {
    check_same_prime(x, y);
    const long p = x.p_;
    if (y.is_zero()) throw DivisionByZero("p-adic division by zero");
    if (x.is_exact() && y.is_exact()) return PadicNumber(p, x.exact_ / y.exact_);
    if (x.is_exact_zero()) return x;
    if (x.is_precision_zero()) return PadicNumber::zero_to(p, x.abs_ - y.valuation().value());
    const long v = x.valuation().value() - y.valuation().value();
    const long rel = std::min(x.is_exact() ? kInf : x.rel_, y.is_exact() ? kInf : y.rel_);
    const Integer M = ppow(p, rel);
    auto unit = [&](const PadicNumber& n) {
        if (!n.is_exact()) return n.unit_;
        long dummy = 0;
        return unit_of(n.exact_, p, rel, &dummy);
    };
    return PadicNumber::inexact(p, v, Integer(unit(x) * invert_mod(unit(y), M)), rel);
}

std::string PadicNumber::to_string() const {
    switch (kind_) {
        case Kind::Exact: return to_fraction_string(exact_, false);
        case Kind::Zero: return "O(" + std::to_string(p_) + "^" + std::to_string(abs_) + ")";
        case Kind::Inexact: break;
    }
    std::string s;
    if (val_ != 0) s = std::to_string(p_) + "^" + std::to_string(val_) + "*";
    return s + unit_.get_str() + " + O(" + std::to_string(p_) + "^" + std::to_string(val_ + rel_) + ")";
}

ExtValuation guarded_valuation(const PadicNumber& x, long min_rel) {
    if (x.is_exact()) return x.valuation();
    if (x.is_precision_zero())
        throw PrecisionExhausted("value indistinguishable from zero: " + x.to_string());
    if (x.rel_precision().value() < min_rel)
        throw PrecisionExhausted("only " + x.rel_precision().to_string() + " significant digits left");
    return x.valuation();
}

namespace {

// Square root of u modulo the odd prime p (Tonelli-Shanks); u must be a nonzero residue.
Integer sqrt_mod_prime(const Integer& u, long p) {
    const Integer P(p);
    const Integer a = mod_nonneg(u, P);
    Integer t;
    const Integer e = (P - 1) / 2;
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), P.get_mpz_t());
    if (t != 1) throw NoSquareRoot("not a square modulo " + std::to_string(p));
    Integer q = P - 1;
    long s = 0;
    while (mpz_even_p(q.get_mpz_t()) != 0) {
        q /= 2;
        ++s;
    }
    Integer z = 2;
    while (true) {
        Integer ez;
        mpz_powm(ez.get_mpz_t(), z.get_mpz_t(), e.get_mpz_t(), P.get_mpz_t());
        if (ez == P - 1) break;
        ++z;
    }
    Integer c, r, tt;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), P.get_mpz_t());
    const Integer q1 = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), q1.get_mpz_t(), P.get_mpz_t());
    mpz_powm(tt.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), P.get_mpz_t());
    long m = s;
    while (tt != 1) {
        long i = 0;
        Integer t2 = tt;
        while (t2 != 1) {
            t2 = mod_nonneg(Integer(t2 * t2), P);
            ++i;
        }
        Integer b = c;
        for (long k = 0; k < m - i - 1; ++k) b = mod_nonneg(Integer(b * b), P);
        r = mod_nonneg(Integer(r * b), P);
        c = mod_nonneg(Integer(b * b), P);
        tt = mod_nonneg(Integer(tt * c), P);
        m = i;
    }
    return r;
}

}  // namespace

PadicNumber hensel_sqrt(const PadicNumber& a, long target_precision) {
    if (target_precision <= 0) throw ArgumentError("target precision must be positive");
    const long p = a.prime();
    if (a.is_exact_zero()) return a;
    if (a.is_precision_zero()) throw PrecisionExhausted("square root of a precision-limited zero");

    const long v = a.valuation().value();
    if (v % 2 != 0) throw NoSquareRoot("odd valuation");
    const long loss = (p == 2) ? 1 : 0;
    const long avail = a.is_exact() ? target_precision + 1 + loss : a.rel_precision().value();
    if (avail - loss < target_precision)
        throw PrecisionExhausted("input carries " + std::to_string(avail) + " digits, " +
                                 std::to_string(target_precision) + " requested");
    const long out = target_precision;

    Integer u;
    if (a.is_exact()) {
        long dummy = 0;
        u = unit_of(a.exact_value(), p, out + 1 + loss, &dummy);
    } else {
        u = a.unit();
    }

    Integer r;
    if (p == 2) {
        if (avail < 3) throw PrecisionExhausted("need three 2-adic digits to decide squareness");
        if (mod_nonneg(u, Integer(8)) != 1) throw NoSquareRoot("unit not congruent to 1 mod 8");
        r = 1;
        for (long k = 3; k <= out; ++k) {
            const Integer mod = ppow(2, k + 1);
            if (mod_nonneg(Integer(r * r - u), mod) != 0) r += ppow(2, k - 1);
        }
        const Integer M = ppow(2, out);
        r = mod_nonneg(r, M);
        if (mod_nonneg(r, Integer(4)) == 3) r = M - r;
    } else {
        r = sqrt_mod_prime(u, p);
        long k = 1;
        while (k < out) {
            k = std::min(2 * k, out);
            const Integer M = ppow(p, k);
            const Integer f = mod_nonneg(Integer(r * r - u), M);
            r = mod_nonneg(Integer(r - f * invert_mod(Integer(2 * r), M)), M);
        }
        const Integer M = ppow(p, out);
        r = mod_nonneg(r, M);
        if (mod_nonneg(r, Integer(p)) > p / 2) r = M - r;
    }
    return PadicNumber::inexact(p, v / 2, r, out);
}

}  // namespace edsval
