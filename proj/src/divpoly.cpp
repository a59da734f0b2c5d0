#include "edsval/divpoly.hpp"

#include "edsval/troublemaker.hpp"

namespace edsval {

namespace {

Rational power(const Rational& base, long e) {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace

int rank7_sign(long n) {
    switch (mod_nonneg(n, 7)) {
        case 0: return 0;
        case 1: case 4: case 5: return 1;
        default: return -1;
    }
}

Rank7Result rank7_torsion_eds(const Rational& alpha, long N) {
    if (alpha == 0 || alpha == 1) throw ConstructionError("α must avoid 0 and 1");
    const Rational b = alpha * alpha * alpha - alpha * alpha;
    const Rational c = alpha * alpha - alpha;
    const Rational zero(0);
    RationalCurve E = [&] {
        try {
            return RationalCurve(1 - c, -b, -b, zero, zero);
        } catch (const SingularModel& e) {
            throw ConstructionError(std::string("degenerate parameter: ") + e.what());
        }
    }();
    const RationalPoint P = RationalPoint::affine(zero, zero);
    for (long k = 1; k < 7; ++k)
        if (E.scalar_mul(P, k).is_identity())
            throw ConstructionError("(0,0) has order " + std::to_string(k) + ", not 7");
    if (!E.scalar_mul(P, 7).is_identity()) throw ConstructionError("(0,0) does not have order 7");

    Rank7Result out{b, c, E, P, eds(E, P, N), {}};
    for (long n = 1; n <= N; ++n) {
        const int eps = rank7_sign(n);
        const Rational expected =
            eps == 0 ? Rational(0) : eps * power(alpha, R(n, 2, 7)) * power(alpha - 1, R(n, 1, 7));
        if (out.sequence.at(n) != expected) out.mismatches.push_back(n);
    }
    return out;
}

}  // namespace edsval
