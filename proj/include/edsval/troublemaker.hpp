#pragma once

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace edsval {

/// (a, ℓ) reduced to ℓ > 0 and 0 <= a <= ℓ/2, which leaves R_n unchanged.
struct TroublemakerQuery {
    long a = 0;
    long ell = 1;
    long gcd = 1;  ///< gcd(a, ℓ) of the normalized pair
    bool normalized = false;
};

TroublemakerQuery normalize_query(long a, long ell);

/// Elliptic troublemaker sequence R_n(a, ℓ) for n >= 0, ℓ != 0 (ArgumentError otherwise).
long R(long n, long a, long ell);

// Alternative closed forms; each requires ℓ > 0 and n >= 0.
long R_mainalt(long n, long a, long ell);
/// Requires 0 <= a < ℓ.
long R_shortmain(long n, long a, long ell);
long R_bernoulli(long n, long a, long ell);
/// Requires a >= 0.
long R_sum_form(long n, long a, long ell);
/// ⌊n²a(ℓ-a)/2ℓ⌋ without residue reduction; equals R_n only under restrictions.
long R_single_floor(long n, long a, long ell);

struct RVariants {
    long main = 0;
    long mainalt = 0;
    std::optional<long> shortmain;
    long bernoulli = 0;
    std::optional<long> sum_form;

    bool consistent() const;
};

RVariants R_variants(long n, long a, long ell);

inline constexpr int kTable1Columns = 13;

struct Table1Row {
    long a;
    long ell;
    std::array<long, kTable1Columns> values;  ///< n = 1..13
};

/// The fourteen (a, ℓ) rows of the standard table.
const std::vector<std::pair<long, long>>& table1_pairs();
std::vector<Table1Row> table1();
/// Header "a,ell,n1,...,n13" followed by one line per row.
std::string table1_csv();

/// First (n, a, ℓ) with 0 <= a < ℓ, ℓ in [ell_min, ell_max], n <= n_max, ℓ ∤ na, where the single-floor
/// form differs from R_n.
std::optional<std::tuple<long, long, long>> single_floor_witness(long ell_min, long ell_max, long n_max);

}  // namespace edsval
