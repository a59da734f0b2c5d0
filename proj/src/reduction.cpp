#include "edsval/reduction.hpp"

#include <numeric>

#include "edsval/troublemaker.hpp"

namespace edsval {

namespace {

constexpr long kDivisorsOf24[] = {1, 2, 3, 4, 6, 8, 12, 24};
constexpr long kMaxPrecisionFactor = 64;

PadicCurve lift_curve(const RationalCurve& E, long p) {
    auto lift = [p](const Rational& q) { return PadicNumber(p, q); };
    return PadicCurve(lift(E.a1()), lift(E.a2()), lift(E.a3()), lift(E.a4()), lift(E.a6()));
}

PadicPoint approx_point(const RationalPoint& P, long p, long precision) {
    return PadicPoint::affine(PadicNumber::approx(p, P.x(), precision), PadicNumber::approx(p, P.y(), precision));
}

/// Order of P when it is a rational torsion point (order at most 12), else 0.
long small_torsion_order(const RationalCurve& E, const RationalPoint& P) {
    RationalPoint Q = P;
    for (long k = 1; k <= 12; ++k) {
        if (Q.is_identity()) return k;
        Q = E.add(Q, P);
    }
    return 0;
}

template <class Fn>
auto with_precision(long precision, Fn&& fn) {
    for (long prec = precision;; prec *= 2) {
        try {
            return fn(prec);
        } catch (const PrecisionExhausted&) {
            if (prec >= kMaxPrecisionFactor * precision) throw;
        }
    }
}

/// (v(Ψ_n), v(φ_n)); v(Ψ_n) is ∞ exactly when [n]P = O.
template <class F>
std::pair<ExtValuation, ExtValuation> psi_phi_valuations(DivisionValues<F>& D, long n, long p);

template <>
std::pair<ExtValuation, ExtValuation> psi_phi_valuations(DivisionValues<Rational>& D, long n, long p) {
    return {vp(D.psi(n), p), vp(D.phi(n), p)};
}

template <>
std::pair<ExtValuation, ExtValuation> psi_phi_valuations(DivisionValues<PadicNumber>& D, long n, long) {
    return {guarded_valuation(D.psi(n)), guarded_valuation(D.phi(n))};
}

ExtValuation integer_or_throw(const Rational& q, const char* what) {
    if (q.get_den() != 1) throw InternalInconsistency(std::string(what) + " is not an integer");
    const Integer z(q.get_num());
    if (!z.fits_slong_p()) throw ResourceLimit(std::string(what) + " exceeds 64-bit range");
    return ExtValuation(z.get_si());
}

long ipow(long b, long e) {
    long r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

std::string to_string(ReductionType t) {
    switch (t) {
        case ReductionType::GOOD: return "GOOD";
        case ReductionType::MULTIPLICATIVE: return "MULTIPLICATIVE";
        case ReductionType::ADDITIVE_POT_GOOD: return "ADDITIVE_POT_GOOD";
        case ReductionType::ADDITIVE_POT_MULT: break;
    }
    return "ADDITIVE_POT_MULT";
}

std::string to_string(PointStatus s) {
    return s == PointStatus::SINGULAR_REDUCTION ? "SINGULAR_REDUCTION" : "NONSINGULAR_REDUCTION";
}

ReductionType reduction_type(ExtValuation v_delta, ExtValuation v_c4, ExtValuation v_j) {
    if (v_delta == ExtValuation(0)) return ReductionType::GOOD;
    if (v_c4 == ExtValuation(0)) return ReductionType::MULTIPLICATIVE;
    return v_j < ExtValuation(0) ? ReductionType::ADDITIVE_POT_MULT : ReductionType::ADDITIVE_POT_GOOD;
}

ReductionClass classify(const RationalCurve& E, const RationalPoint& P, long p) {
    ReductionClass out;
    const ReducedPoint R = [&] {
        try {
            return reduce_mod_p(E, P, p);
        } catch (const ResourceLimit&) {
            // raised only after the point was found non-singular
            return ReducedPoint{};
        }
    }();
    const auto& I = E.invariants();
    out.type = reduction_type(vp(I.delta, p), vp(I.c4, p), vp(I.j, p));
    out.status = R.singular ? PointStatus::SINGULAR_REDUCTION : PointStatus::NONSINGULAR_REDUCTION;
    out.reduced_order = R.order;
    return out;
}

LocalData local_data(const RationalCurve& E, const RationalPoint& P, long p) {
    const ReductionClass c = classify(E, P, p);
    const auto& I = E.invariants();
    return {p, vp(I.delta, p), vp(I.c4, p), vp(I.j, p), c.type, c.status};
}

LocalData local_data(const PadicCurve& E, const PadicPoint& P) {
    E.require_on_curve(P);
    const long p = E.a1().prime();
    for (const PadicNumber* a : {&E.a1(), &E.a2(), &E.a3(), &E.a4(), &E.a6()})
        if (a->valuation() < ExtValuation(0)) throw NonIntegralModel("p-adic model is not integral");
    const auto& I = E.invariants();
    LocalData out;
    out.p = p;
    out.v_delta = guarded_valuation(I.delta);
    out.v_c4 = I.c4.is_exact_zero() ? ExtValuation::infinity() : guarded_valuation(I.c4);
    out.v_j = out.v_c4.is_infinite() ? ExtValuation::infinity() : 3 * out.v_c4 - out.v_delta;
    if (out.v_delta >= ExtValuation(12) && (p < 5 || out.v_c4 >= ExtValuation(4)))
        throw NotMinimal("p-adic model is not known to be minimal");
    out.type = reduction_type(out.v_delta, out.v_c4, out.v_j);
    if (!P.is_identity() && guarded_valuation(P.x()) >= ExtValuation(0)) {
        auto res = [p](const PadicNumber& z) { return PrimeFieldElement(p, z.residue()); };
        const PrimeFieldElement x = res(P.x()), y = res(P.y());
        const PrimeFieldElement a1 = res(E.a1()), a2 = res(E.a2()), a3 = res(E.a3()), a4 = res(E.a4());
        const PrimeFieldElement two(p, 2), three(p, 3);
        const bool fx = (a1 * y - three * x * x - two * a2 * x - a4).is_zero();
        const bool fy = (two * y + a1 * x + a3).is_zero();
        if (fx && fy) out.status = PointStatus::SINGULAR_REDUCTION;
    }
    return out;
}

ExtValuation predict(const ClosedFormParams& P, long n) {
    if (n <= 0) throw ArgumentError("predict needs n >= 1");
    if (P.d <= 0 || P.n_P <= 0) throw ArgumentError("incomplete parameters: d and n_P must be positive");
    if (P.a_P != 0 && P.ell_P <= 0) throw ArgumentError("incomplete parameters: a_P set without ℓ_P");
    ExtValuation inner = 0;
    if (n % P.n_P == 0) inner = s_eval(P.s_params(), n / P.n_P);
    if (inner.is_infinite()) return inner;
    const Rational n2 = Rational(n) * n;
    Rational bracket = P.quad_offset * (n2 - 1) + P.x_coeff * n2 + Rational(inner.value());
    if (P.ell_P > 0) bracket += R(n, P.a_P, P.ell_P);
    bracket /= P.d;
    return integer_or_throw(bracket, "predicted valuation");
}

long reduction_index(const RationalCurve& E, const RationalPoint& P, long p, long cap, long precision) {
    require_prime(p);
    E.require_on_curve(P);
    if (P.is_identity() || vp(P.x(), p) < ExtValuation(0)) return 1;
    auto scan = [&](auto& D) {
        for (long n = 2; n <= cap; ++n) {
            const auto [vpsi, vphi] = psi_phi_valuations(D, n, p);
            if (vpsi.is_infinite() || vphi < 2 * vpsi) return n;
        }
        throw ResourceLimit("reduction index exceeds the probe cap " + std::to_string(cap) + " at p = " +
                            std::to_string(p));
    };
    if (small_torsion_order(E, P) != 0) {
        DivisionValues<Rational> D(E, P);
        return scan(D);
    }
    const PadicCurve Ep = lift_curve(E, p);
    return with_precision(precision, [&](long prec) {
        DivisionValues<PadicNumber> D(Ep, approx_point(P, p, prec));
        return scan(D);
    });
}

ExtValuation theta_valuation_of_multiple(const RationalCurve& E, const RationalPoint& P, long p, long m,
                                         long precision) {
    require_prime(p);
    if (m <= 0) throw ArgumentError("multiple index must be positive");
    E.require_on_curve(P);
    if (P.is_identity()) return ExtValuation::infinity();
    auto read = [&](auto& D) {
        const auto [vpsi, vphi] = psi_phi_valuations(D, m, p);
        if (vpsi.is_infinite()) return ExtValuation::infinity();
        if (!(vphi < 2 * vpsi)) throw ArgumentError("[" + std::to_string(m) + "]P is not in the kernel of reduction");
        if (vphi.value() % 2 != 0) throw InternalInconsistency("odd valuation of φ_m in the kernel");
        return vpsi - ExtValuation(vphi.value() / 2);
    };
    const long order = small_torsion_order(E, P);
    if (order != 0) {
        if (m % order == 0) return ExtValuation::infinity();
        DivisionValues<Rational> D(E, P);
        return read(D);
    }
    const PadicCurve Ep = lift_curve(E, p);
    return with_precision(precision, [&](long prec) {
        DivisionValues<PadicNumber> D(Ep, approx_point(P, p, prec));
        return read(D);
    });
}

std::vector<ExtValuation> valuations(const EDSSequence<Rational>& W, long p) {
    std::vector<ExtValuation> out;
    for (long n = 1; n <= W.size(); ++n) out.push_back(vp(W.at(n), p));
    return out;
}

std::vector<ExtValuation> valuations(const EDSSequence<PadicNumber>& W) {
    std::vector<ExtValuation> out;
    for (long n = 1; n <= W.size(); ++n) {
        try {
            out.push_back(guarded_valuation(W.at(n)));
        } catch (const PrecisionExhausted& e) {
            throw PrecisionExhausted("W_" + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

namespace {

void measure_inner(ClosedFormParams& out, const RationalCurve& E, const RationalPoint& P, long p,
                   const DeriveOptions& opt) {
    const long cap = opt.probe_cap > 0 ? opt.probe_cap : 4 * (p + 1) * (p + 1);
    out.n_P = reduction_index(E, P, p, cap, opt.precision);
    out.s_P = theta_valuation_of_multiple(E, P, p, out.n_P, opt.precision);
    out.provenance["n_P"] = Provenance::MEASURED;
    out.provenance["s_P"] = Provenance::MEASURED;

    const FormalBH bh = formal_b_h(E, p);
    out.b_P = bh.b;
    out.h_P = bh.h;
    out.provenance["b_P"] = bh.provenance;
    out.provenance["h_P"] = bh.provenance;

    out.w_P = 0;
    const SParams sp = out.s_params();
    if (sp.equality_case()) {
        const long j = sp.j();
        const ExtValuation aj = theta_valuation_of_multiple(E, P, p, ipow(p, j) * out.n_P, opt.precision);
        const ExtValuation aj1 = theta_valuation_of_multiple(E, P, p, ipow(p, j + 1) * out.n_P, opt.precision);
        out.w_P = aj1.is_infinite() ? aj1 : aj1 - aj - ExtValuation(1);
    }
    out.provenance["w_P"] = Provenance::MEASURED;
}

long first_nonzero(const std::vector<Integer>& res, const std::vector<bool>& inf) {
    for (std::size_t i = 0; i < res.size(); ++i)
        if (inf[i] || res[i] != 0) return static_cast<long>(i) + 1;
    return 0;
}

struct Candidate {
    long n_P;
    long c;
    ExtValuation s;
};

}  // namespace

ClosedFormParams fit_closed_form(const std::vector<ExtValuation>& direct, const LocalData& ctx) {
    require_prime(ctx.p);
    if (direct.size() < 2) throw ArgumentError("fitting needs at least two valuations");
    const long p = ctx.p;
    const long N = static_cast<long>(direct.size());
    const bool mult_side = ctx.v_j < ExtValuation(0);

    for (long d : kDivisorsOf24) {
        Rational r;
        long ell = 0;
        if (mult_side) {
            if (ctx.v_c4.is_infinite()) continue;
            r = Rational(d * ctx.v_c4.value(), 4);
            ell = -d * ctx.v_j.value();
        } else {
            if (ctx.v_delta.is_infinite()) continue;
            r = Rational(d * ctx.v_delta.value(), 12);
        }
        r.canonicalize();
        if (r.get_den() != 1) continue;
        const long rl = r.get_num().get_si();

        std::vector<long> a_options{0};
        if (mult_side)
            for (long a = 1; 2 * a <= ell; ++a) a_options.push_back(a);

        for (long a : a_options) {
            std::vector<Integer> res(static_cast<std::size_t>(N));
            std::vector<bool> inf(static_cast<std::size_t>(N), false);
            for (long n = 1; n <= N; ++n) {
                const auto i = static_cast<std::size_t>(n - 1);
                if (direct[i].is_infinite()) {
                    inf[i] = true;
                    continue;
                }
                res[i] = Integer(d) * direct[i].value() - Integer(rl) * (n * n - 1);
                if (a > 0) res[i] -= R(n, a, ell);
            }

            std::vector<Candidate> candidates;
            if (const long n0 = first_nonzero(res, inf); n0 > 1) {
                const auto i = static_cast<std::size_t>(n0 - 1);
                if (inf[i]) {
                    candidates.push_back({n0, 0, ExtValuation::infinity()});
                } else if (res[i] > 0 && res[i].fits_slong_p()) {
                    candidates.push_back({n0, 0, ExtValuation(res[i].get_si())});
                }
            }
            if (a == 0) {
                for (long n = 2; n <= N; ++n) {
                    if (n % p == 0) continue;
                    const auto i = static_cast<std::size_t>(n - 1);
                    if (inf[i]) break;
                    const Integer q = -res[i];
                    if (q > 0 && q % (n * n - 1) == 0) {
                        const Integer s = q / (n * n - 1);
                        if (s.fits_slong_p()) candidates.push_back({1, -s.get_si(), ExtValuation(s.get_si())});
                    }
                    break;
                }
            }

            const std::vector<long> b_options = a > 0 ? std::vector<long>{p} : std::vector<long>{1, p, p * p};
            const long h_max = a > 0 ? 0 : d - 1;
            for (const Candidate& cand : candidates)
                for (long b : b_options)
                    for (long h = 0; h <= h_max; ++h)
                        for (long wi = 0; wi <= 4 * d + 1; ++wi) {
                            const ExtValuation w = wi > 4 * d ? ExtValuation::infinity() : ExtValuation(wi);
                            const SParams sp{p, b, d, h, cand.s, w};
                            if (w != ExtValuation(0) && !sp.equality_case()) continue;
                            bool ok = true;
                            for (long n = 1; n <= N && ok; ++n) {
                                const auto i = static_cast<std::size_t>(n - 1);
                                const ExtValuation S = n % cand.n_P == 0 ? s_eval(sp, n / cand.n_P) : ExtValuation(0);
                                if (S.is_infinite() || inf[i]) {
                                    ok = S.is_infinite() && inf[i];
                                    continue;
                                }
                                ok = Integer(cand.c) * (n * n) + S.value() == res[i];
                            }
                            if (!ok) continue;

                            ClosedFormParams out;
                            out.p = p;
                            out.type = ctx.type;
                            out.status = ctx.status;
                            out.d = d;
                            out.quad_offset = r;
                            out.n_P = cand.n_P;
                            out.s_P = cand.s;
                            out.x_coeff = cand.c;
                            out.b_P = b;
                            out.h_P = h;
                            out.w_P = w;
                            out.a_P = a;
                            out.ell_P = a > 0 ? ell : 0;
                            for (const char* k : {"d", "n_P", "s_P", "w_P", "b_P", "h_P", "x_coeff", "a_P"})
                                out.provenance[k] = Provenance::FITTED;
                            out.provenance["quad_offset"] = Provenance::MEASURED;
                            if (a > 0) out.provenance["ell_P"] = Provenance::MEASURED;
                            return out;
                        }
        }
    }
    throw FitFailure("no closed form with d | 24 reproduces the " + std::to_string(N) + " given valuations at p = " +
                     std::to_string(p));
}

ClosedFormParams fit_closed_form(const std::vector<ExtValuation>& direct, const RationalCurve& E,
                                 const RationalPoint& P, long p) {
    return fit_closed_form(direct, local_data(E, P, p));
}

std::vector<Mismatch> compare(const ClosedFormParams& params, const std::vector<ExtValuation>& direct) {
    std::vector<Mismatch> out;
    for (long n = 1; n <= static_cast<long>(direct.size()); ++n) {
        const ExtValuation actual = direct[static_cast<std::size_t>(n - 1)];
        const ExtValuation predicted = predict(params, n);
        if (predicted != actual) out.push_back({n, predicted, actual});
    }
    return out;
}

namespace {

/// a_P in [1, ℓ/2] reproducing every valuation in `window`, with the other parameters fixed.
long fit_a_P(ClosedFormParams params, const std::vector<ExtValuation>& window) {
    for (long a = 1; 2 * a <= params.ell_P; ++a) {
        params.a_P = a;
        try {
            if (compare(params, window).empty()) return a;
        } catch (const InternalInconsistency&) {
        }
    }
    throw FitFailure("no a_P in [1, ℓ/2] reproduces the valuations at p = " + std::to_string(params.p));
}

ClosedFormParams derive_with_window(const RationalCurve& E, const RationalPoint& P, long p, const DeriveOptions& opt,
                                    const std::vector<ExtValuation>* window) {
    const LocalData ctx = local_data(E, P, p);
    std::vector<ExtValuation> own;
    auto get_window = [&]() -> const std::vector<ExtValuation>& {
        if (window) return *window;
        if (own.empty()) own = valuations(eds(E, P, opt.fit_window), p);
        return own;
    };

    const bool nonsingular = ctx.status == PointStatus::NONSINGULAR_REDUCTION;
    if (!nonsingular && ctx.type != ReductionType::MULTIPLICATIVE) return fit_closed_form(get_window(), ctx);

    ClosedFormParams out;
    out.p = p;
    out.type = ctx.type;
    out.status = ctx.status;
    out.d = 1;
    out.quad_offset = 0;
    out.provenance["d"] = Provenance::MEASURED;
    out.provenance["quad_offset"] = Provenance::MEASURED;
    measure_inner(out, E, P, p, opt);
    if (nonsingular) {
        const ExtValuation vx = vp(P.x(), p);
        out.x_coeff = vx < ExtValuation(0) ? Rational(vx.value(), 2) : Rational(0);
        out.x_coeff.canonicalize();
        out.provenance["x_coeff"] = Provenance::MEASURED;
        return out;
    }
    out.x_coeff = 0;
    out.provenance["x_coeff"] = Provenance::MEASURED;
    out.ell_P = ctx.v_delta.value();
    out.provenance["ell_P"] = Provenance::MEASURED;
    out.a_P = fit_a_P(out, get_window());
    out.provenance["a_P"] = Provenance::FITTED;
    return out;
}

}  // namespace

ClosedFormParams derive_params(const RationalCurve& E, const RationalPoint& P, long p, const DeriveOptions& opt) {
    return derive_with_window(E, P, p, opt, nullptr);
}

VerificationReport verify(const RationalCurve& E, const RationalPoint& P, long p, long N, DeriveOptions opt) {
    if (N < 2) throw ArgumentError("verification needs N >= 2");
    VerificationReport rep;
    rep.p = p;
    rep.checked_n = N;
    rep.direct = valuations(eds(E, P, N), p);
    const std::vector<ExtValuation> window(rep.direct.begin(), rep.direct.begin() + N / 2);
    opt.fit_window = N / 2;
    rep.params = derive_with_window(E, P, p, opt, &window);
    for (const auto& [name, prov] : rep.params.provenance)
        if (prov == Provenance::FITTED) rep.fit_window = N / 2;
    rep.mismatches = compare(rep.params, rep.direct);
    return rep;
}

VerificationReport verify(const PadicCurve& E, const PadicPoint& P, long N) {
    if (N < 2) throw ArgumentError("verification needs N >= 2");
    VerificationReport rep;
    rep.p = E.a1().prime();
    rep.checked_n = N;
    rep.direct = valuations(eds(E, P, N));
    const std::vector<ExtValuation> window(rep.direct.begin(), rep.direct.begin() + N / 2);
    rep.params = fit_closed_form(window, local_data(E, P));
    rep.fit_window = N / 2;
    rep.mismatches = compare(rep.params, rep.direct);
    return rep;
}

std::vector<std::pair<long, long>> lemma63_pairs(long bound) {
    if (bound < 1) throw ArgumentError("bound must be positive");
    std::vector<std::pair<long, long>> out;
    for (long a = 1; a <= bound; ++a)
        for (long b = 1; b <= bound; ++b) {
            const long period = 2 * std::lcm(a, b);
            bool holds = true;
            for (long n = 1; n <= period && holds; ++n)
                if (n % a != 0) holds = (n * n) % b == 1 % b;
            if (holds) out.emplace_back(a, b);
        }
    return out;
}

bool pot_good_np_allowed(long d, const Rational& r, long n_P) {
    if (d <= 0 || n_P <= 0) throw ArgumentError("d and n_P must be positive");
    Rational rr = r;
    rr.canonicalize();
    if (rr.get_den() != 1) throw ArgumentError("offset must be an integer");
    const long g = std::gcd(d, static_cast<long>(std::abs(rr.get_num().get_si())));
    const long dp = d / (g == 0 ? d : g);
    switch (dp) {
        case 1: return true;
        case 2: case 4: case 8: return n_P == 1 || n_P == 2;
        case 3: return n_P == 1 || n_P == 3;
        default: return n_P == 1;
    }
}

}  // namespace edsval
