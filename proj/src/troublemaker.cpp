#include "edsval/troublemaker.hpp"

#include <numeric>
#include <sstream>

#include "edsval/errors.hpp"
#include "edsval/numbers.hpp"

namespace edsval {

namespace {

void require_positive_ell(long n, long ell) {
    if (ell <= 0) throw ArgumentError("ℓ must be positive, got " + std::to_string(ell));
    if (n < 0) throw ArgumentError("n must be non-negative");
}

long to_long(const Integer& z) {
    if (!z.fits_slong_p()) throw ResourceLimit("troublemaker value exceeds 64-bit range");
    return z.get_si();
}

long to_long(const Rational& q) {
    if (q.get_den() != 1) throw InternalInconsistency("troublemaker form produced a non-integer");
    return to_long(Integer(q.get_num()));
}

/// ⌊b(ℓ-b)/2ℓ⌋·(scale) style terms: floor(k·b(ℓ-b) / 2ℓ).
Integer floor_term(const Integer& k, const Integer& b, long ell) {
    return floor_div(k * b * (Integer(ell) - b), Integer(2 * ell));
}

Rational frac(const Rational& t) { return t - Rational(floor(t)); }

Rational b2_periodic(const Rational& t) {
    const Rational f = frac(t);
    return f * f - f + Rational(1, 6);
}

}  // namespace

TroublemakerQuery normalize_query(long a, long ell) {
    if (ell == 0) throw ArgumentError("ℓ must be nonzero");
    TroublemakerQuery q;
    q.ell = ell < 0 ? -ell : ell;
    q.a = mod_nonneg(a, q.ell);
    if (2 * q.a > q.ell) q.a = q.ell - q.a;
    q.gcd = std::gcd(q.a, q.ell);
    q.normalized = true;
    return q;
}

long R(long n, long a, long ell) {
    if (ell == 0) throw ArgumentError("ℓ must be nonzero");
    if (n < 0) throw ArgumentError("n must be non-negative");
    const long L = ell < 0 ? -ell : ell;
    const Integer ahat = mod_nonneg(Integer(a), Integer(L));
    const Integer nahat = mod_nonneg(Integer(n) * a, Integer(L));
    const Integer n2 = Integer(n) * n;
    return to_long(Integer(floor_term(n2, ahat, L) - floor_term(Integer(1), nahat, L)));
}

long R_mainalt(long n, long a, long ell) {
    require_positive_ell(n, ell);
    const Rational na = fraction(Integer(n) * a, ell), al = fraction(a, ell);
    const Rational x = na - Rational(floor(na));
    const Rational y = al - Rational(floor(al));
    const Rational n2(Integer(n) * n);
    Rational v = fraction(ell, 2) * (x * x - x - n2 * y * y + n2 * y);
    v.canonicalize();
    return to_long(v);
}

long R_shortmain(long n, long a, long ell) {
    require_positive_ell(n, ell);
    if (a < 0 || a >= ell) throw ArgumentError("short form requires 0 <= a < ℓ");
    const Rational na = fraction(Integer(n) * a, ell);
    const Rational x = na - Rational(floor(na));
    const Rational n2(Integer(n) * n);
    Rational v = fraction(ell, 2) * (x * x - x + n2 * fraction(Integer(a) * (ell - a), Integer(ell) * ell));
    v.canonicalize();
    return to_long(v);
}

long R_bernoulli(long n, long a, long ell) {
    require_positive_ell(n, ell);
    const Rational n2(Integer(n) * n);
    Rational v = fraction(ell, 2) * (b2_periodic(fraction(Integer(n) * a, ell)) -
                                     n2 * b2_periodic(fraction(a, ell)) + (n2 - 1) / 6);
    v.canonicalize();
    return to_long(v);
}

long R_sum_form(long n, long a, long ell) {
    require_positive_ell(n, ell);
    if (a < 0) throw ArgumentError("sum form requires a >= 0");
    const Integer na = Integer(n) * a;
    const Integer n2 = Integer(n) * n;
    // Σ_{k=1}^{K} (kℓ - c) = ℓK(K+1)/2 - Kc
    auto block = [ell](const Integer& c) {
        const Integer K = floor_div(c, Integer(ell));
        return Integer(ell * K * (K + 1) / 2 - K * c);
    };
    return to_long(Integer(Integer((n2 - n) / 2 * a) + block(na) - n2 * block(Integer(a))));
}

long R_single_floor(long n, long a, long ell) {
    require_positive_ell(n, ell);
    const Integer n2 = Integer(n) * n;
    return to_long(floor_div(n2 * a * (ell - a), Integer(2 * ell)));
}

bool RVariants::consistent() const {
    return mainalt == main && bernoulli == main && (!shortmain || *shortmain == main) &&
           (!sum_form || *sum_form == main);
}

RVariants R_variants(long n, long a, long ell) {
    RVariants v;
    v.main = R(n, a, ell);
    v.mainalt = R_mainalt(n, a, ell);
    if (a >= 0 && a < ell) v.shortmain = R_shortmain(n, a, ell);
    v.bernoulli = R_bernoulli(n, a, ell);
    if (a >= 0) v.sum_form = R_sum_form(n, a, ell);
    return v;
}

const std::vector<std::pair<long, long>>& table1_pairs() {
    static const std::vector<std::pair<long, long>> pairs = {
        {1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {1, 5}, {2, 5},
        {1, 6}, {2, 6}, {3, 6}, {1, 7}, {2, 7}, {3, 7}, {1, 11}};
    return pairs;
}

std::vector<Table1Row> table1() {
    std::vector<Table1Row> rows;
    for (const auto& [a, ell] : table1_pairs()) {
        Table1Row row{a, ell, {}};
        for (int n = 1; n <= kTable1Columns; ++n) row.values[static_cast<std::size_t>(n - 1)] = R(n, a, ell);
        rows.push_back(row);
    }
    return rows;
}

std::string table1_csv() {
    std::ostringstream out;
    out << "a,ell";
    for (int n = 1; n <= kTable1Columns; ++n) out << ",n" << n;
    out << '\n';
    for (const auto& row : table1()) {
        out << row.a << ',' << row.ell;
        for (long v : row.values) out << ',' << v;
        out << '\n';
    }
    return out.str();
}

std::optional<std::tuple<long, long, long>> single_floor_witness(long ell_min, long ell_max, long n_max) {
    for (long ell = ell_min; ell <= ell_max; ++ell)
        for (long a = 0; a < ell; ++a)
            for (long n = 0; n <= n_max; ++n) {
                if ((n * a) % ell == 0) continue;
                if (R_single_floor(n, a, ell) != R(n, a, ell)) return std::make_tuple(n, a, ell);
            }
    return std::nullopt;
}

}  // namespace edsval
