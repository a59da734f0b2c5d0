#include "edsval/numbers.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "edsval/errors.hpp"

namespace edsval {

long ExtValuation::value() const {
    if (!value_) throw ArgumentError("value() of an infinite valuation");
    return *value_;
}

ExtValuation operator-(ExtValuation a, ExtValuation b) {
    if (b.is_infinite()) throw ArgumentError("subtracting an infinite valuation");
    if (a.is_infinite()) return a;
    return ExtValuation(*a.value_ - *b.value_);
}

ExtValuation operator*(long k, ExtValuation v) {
    if (k < 0) throw ArgumentError("negative multiple of an extended valuation");
    if (k == 0) return ExtValuation(0);
    if (v.is_infinite()) return v;
    return ExtValuation(k * *v.value_);
}

std::string ExtValuation::to_string() const {
    return value_ ? std::to_string(*value_) : std::string("inf");
}

std::ostream& operator<<(std::ostream& os, const ExtValuation& v) { return os << v.to_string(); }

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

bool is_prime(long n) {
    if (n < 2) return false;
    if (n >= (1L << 31)) return is_prime(Integer(n));
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void require_prime(long p) {
    if (!is_prime(p)) throw ArgumentError("not a prime: " + std::to_string(p));
}

long remove_factor(Integer& x, long p) {
    long k = 0;
    Integer q, r;
    const Integer pp(p);
    while (true) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
        if (r != 0) break;
        x = q;
        ++k;
    }
    return k;
}

ExtValuation vp(const Integer& x, long p) {
    require_prime(p);
    if (x == 0) return ExtValuation::infinity();
    Integer y = abs(x);
    const Integer pp(p);
    return ExtValuation(static_cast<long>(mpz_remove(y.get_mpz_t(), y.get_mpz_t(), pp.get_mpz_t())));
}

ExtValuation vp(const Rational& x, long p) {
    if (x == 0) {
        require_prime(p);
        return ExtValuation::infinity();
    }
    return vp(x.get_num(), p) - vp(x.get_den(), p);
}

Integer floor_div(const Integer& a, const Integer& b) {
    if (b == 0) throw DivisionByZero("floor_div by zero");
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer mod_nonneg(const Integer& a, const Integer& m) {
    if (m == 0) throw DivisionByZero("residue modulo zero");
    Integer r;
    const Integer am = abs(m);
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t());
    return r;
}

long mod_nonneg(long a, long m) {
    if (m == 0) throw DivisionByZero("residue modulo zero");
    if (m < 0) m = -m;
    long r = a % m;
    return r < 0 ? r + m : r;
}

Rational fraction(const Integer& num, const Integer& den) {
    if (den == 0) throw DivisionByZero("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Integer floor(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }

std::string to_fraction_string(const Rational& q, bool always_fraction) {
    if (!always_fraction && q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool is_decimal_integer(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

Integer parse_integer(std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    const auto slash = text.find('/');
    const auto num_text = text.substr(0, slash);
    if (!is_decimal_integer(num_text)) throw ArgumentError("malformed rational: '" + std::string(text) + "'");
    Rational q(parse_integer(num_text));
    if (slash != std::string_view::npos) {
        const auto den_text = text.substr(slash + 1);
        if (!is_decimal_integer(den_text)) throw ArgumentError("malformed rational: '" + std::string(text) + "'");
        const Integer den = parse_integer(den_text);
        if (den == 0) throw ArgumentError("zero denominator in '" + std::string(text) + "'");
        q = Rational(q.get_num(), den);
        q.canonicalize();
    }
    return q;
}

double log_abs(const Integer& x) {
    if (x == 0) throw ArgumentError("log of zero");
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

double naive_height(const Rational& q) {
    const Integer n = abs(q.get_num());
    const Integer& d = q.get_den();
    return log_abs(n > d ? n : d);
}

std::string factor_string(const Integer& n, long bound, Integer* cofactor) {
    std::ostringstream out;
    Integer m = abs(n);
    bool first = true;
    if (n < 0) {
        out << "-";
    }
    if (m == 0) {
        if (cofactor) *cofactor = 0;
        return "0";
    }
    for (long p = 2; p < bound && m > 1; p = (p == 2 ? 3 : p + 2)) {
        if (p > 3 && (p % 3 == 0)) continue;
        if (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p)) == 0) continue;
        const long e = remove_factor(m, p);
        if (!first) out << "*";
        out << p;
        if (e > 1) out << "^" << e;
        first = false;
    }
    if (m > 1) {
        if (!first) out << "*";
        out << m.get_str();
        first = false;
    }
    if (first) out << "1";
    if (cofactor) *cofactor = m;
    return out.str();
}

PrimeFieldElement::PrimeFieldElement(long p, long residue) : p_(p), r_(mod_nonneg(residue, p)) {}

PrimeFieldElement::PrimeFieldElement(long p, const Integer& residue)
    : p_(p), r_(mod_nonneg(residue, Integer(p)).get_si()) {}

PrimeFieldElement PrimeFieldElement::inverse() const {
    if (r_ == 0) throw DivisionByZero("inverse of zero in F_p");
    Integer inv;
    const Integer r(r_), p(p_);
    mpz_invert(inv.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
    return PrimeFieldElement(p_, inv.get_si());
}

namespace {
void same_field(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    if (a.prime() != b.prime()) throw PrimeMismatch("F_p elements over different primes");
}
}  // namespace

PrimeFieldElement operator+(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    same_field(a, b);
    return PrimeFieldElement(a.p_, a.r_ + b.r_);
}

PrimeFieldElement operator-(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    same_field(a, b);
    return PrimeFieldElement(a.p_, a.r_ - b.r_);
}

PrimeFieldElement operator*(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    same_field(a, b);
    return PrimeFieldElement(a.p_, static_cast<long>((static_cast<__int128>(a.r_) * b.r_) % a.p_));
}

PrimeFieldElement operator/(const PrimeFieldElement& a, const PrimeFieldElement& b) { return a * b.inverse(); }

PrimeFieldElement operator-(const PrimeFieldElement& a) { return PrimeFieldElement(a.p_, -a.r_); }

PrimeFieldElement reduce(const Rational& q, long p) {
    if (vp(q, p) < ExtValuation(0)) throw ArgumentError("reducing a non-integral rational modulo " + std::to_string(p));
    const Integer mod(p);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), q.get_den().get_mpz_t(), mod.get_mpz_t());
    return PrimeFieldElement(p, Integer(q.get_num() * inv));
}

}  // namespace edsval
