#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "ball.hpp"
#include "bounds.hpp"
#include "error.hpp"
#include "lucas.hpp"
#include "reduction.hpp"

namespace repdiff {

struct SolveConfig {
    long r = 2;
    long s = 1;
    int base = 10;
    long min_k = 1;
    bool allow_m_zero = false;
    BoundMode mode = BoundMode::paper;
    mpfr_prec_t precision = default_precision;
};

struct SolutionDiagnostics {
    bool gamma_nonzero = false;  // linear form certified != 0 at the solution
    bool k_within_bound = false; // k < 1 + n log(delta)/log(base) certified
};

struct SolveReport {
    SolveConfig config;
    BoundReport bounds;
    FamilyOutcome lambda1;
    FamilyOutcome lambda2;
    long lambda1_guard = 0;
    long lambda2_guard = 0;
    long nm_reduced = 0;
    long n_reduced = 0;
    bool enumerated = false;
    std::vector<Solution> solutions;
    std::vector<SolutionDiagnostics> diagnostics;
    double timing_ms = 0.0;
};

inline SequenceParams validated_params(const SolveConfig& c) {
    SequenceParams sp(c.r, c.s);
    if (!sp.solver_admissible())
        throw parameter_error("solver needs s in {-1, 1} and r >= 1");
    if (c.base < 2) throw parameter_error("base must be >= 2");
    if (c.min_k < 1) throw parameter_error("min-k must be >= 1");
    if (c.precision < 64) throw parameter_error("precision must be >= 64 bits");
    if (c.precision > (1L << 22)) throw parameter_error("precision above 4194304 bits");
    return sp;
}

// The second-stage linear form at a claimed solution,
//   Gamma = 1 - delta^{-n} b^k a sqrt(D) / ((b-1)(1 - delta^{m-n})),
// certified nonzero (its sign is decided).
inline bool certify_linear_form_nonzero(const SequenceParams& sp, int base, const Solution& sol,
                                        mpfr_prec_t start = default_precision) {
    return refine(
        [&](mpfr_prec_t p) {
            Ball one = Ball::exact(1L, p);
            Ball bk = pow_int(Ball::exact(static_cast<long>(base), p), sol.length);
            Ball den = Ball::exact(static_cast<long>(base - 1), p) *
                       (one - pow_int(sp.delta(p), static_cast<long>(sol.m) -
                                                       static_cast<long>(sol.n)));
            Ball g = one - pow_int(sp.delta(p), -static_cast<long>(sol.n)) * bk *
                               Ball::exact(static_cast<long>(sol.digit), p) * sp.sqrt_disc(p) /
                               den;
            auto sign = g.certified_sign();
            if (!sign) throw undecidable_error("linear form sign undecided");
            return *sign != 0;
        },
        start);
}

inline bool certify_k_within_bound(const SequenceParams& sp, int base, const Solution& sol,
                                   mpfr_prec_t start = default_precision) {
    return refine(
        [&](mpfr_prec_t p) {
            Ball kb = k_bound(sp, base, BigInt(sol.n), p);
            Rational k(static_cast<long>(sol.length));
            if (k < kb.lower_rational()) return true;
            if (k >= kb.upper_rational()) return false;
            throw undecidable_error("k bound comparison undecided");
        },
        start);
}

namespace detail {

inline SolveReport run_pipeline(const SolveConfig& c, bool enumerate) {
    auto t0 = std::chrono::steady_clock::now();
    SequenceParams sp = validated_params(c);
    SolveReport rep;
    rep.config = c;
    rep.bounds = n_bound_explicit(sp, c.base, c.mode, c.precision);

    auto fam1 = build_lambda1_family(sp, c.base, rep.bounds.m_cap, c.mode, c.precision);
    rep.lambda1 = reduce_family(fam1, c.precision);
    rep.lambda1_guard = lambda1_guard_min(sp, c.precision);
    rep.nm_reduced = std::max(rep.lambda1.bound, rep.lambda1_guard - 1);

    auto fam2 =
        build_lambda2_family(sp, c.base, rep.bounds.m_cap, rep.nm_reduced, c.mode, c.precision);
    rep.lambda2 = reduce_family(fam2, c.precision);
    rep.lambda2_guard = lambda2_guard_min(sp, c.precision);
    rep.n_reduced = std::max(rep.lambda2.bound, rep.lambda2_guard - 1);

    if (enumerate) {
        rep.solutions = enumerate_solutions(sp, c.base, static_cast<unsigned long>(rep.n_reduced),
                                            c.min_k, c.allow_m_zero);
        for (const Solution& sol : rep.solutions)
            rep.diagnostics.push_back(
                {certify_linear_form_nonzero(sp, c.base, sol, c.precision),
                 certify_k_within_bound(sp, c.base, sol, c.precision)});
        rep.enumerated = true;
    }
    rep.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace detail

// Full run: explicit bound, two reduction stages, exhaustive enumeration below
// the reduced bound, per-solution certificates.
inline SolveReport solve(const SolveConfig& c) { return detail::run_pipeline(c, true); }

// Bounds and reductions only.
inline SolveReport reduce_stages(const SolveConfig& c) { return detail::run_pipeline(c, false); }

inline BoundReport bound_stage(const SolveConfig& c) {
    return n_bound_explicit(validated_params(c), c.base, c.mode, c.precision);
}

} // namespace repdiff
