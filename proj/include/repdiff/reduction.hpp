#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ball.hpp"
#include "bounds.hpp"
#include "continued_fraction.hpp"
#include "error.hpp"
#include "lucas.hpp"

namespace repdiff {

// One inhomogeneous instance |omega - k tau + mu| < scale * growth^{-w};
// a convergent denominator q > 6 m_cap with
//   epsilon = ||mu q|| - m_cap ||tau q|| > 0
// excludes all w >= log(scale * q / epsilon) / log(growth) with k <= m_cap.
struct ReductionInstance {
    RealGen tau;
    RealGen mu;
    RealGen scale;  // A > 0
    RealGen growth; // B > 1
    BigInt m_cap;   // M
    std::optional<Rational> tau_rational; // exact expansion when tau is rational
    std::string label;
};

struct ReductionOutcome {
    std::size_t convergent_index = 0;
    BigInt q;
    Ball epsilon;
    long bound = 0;
};

inline constexpr std::size_t reduction_convergent_cap = 200;

namespace detail {

inline Ball epsilon_at(const ReductionInstance& inst, const BigInt& q, mpfr_prec_t p) {
    Ball qb = Ball::exact(q, p);
    Ball tq = nearest_int_distance(inst.tau(p) * qb);
    Ball mq = nearest_int_distance(inst.mu(p) * qb);
    return mq - Ball::exact(inst.m_cap, p) * tq;
}

inline long threshold_bound(const ReductionInstance& inst, const BigInt& q, const Ball& eps,
                            mpfr_prec_t p) {
    Ball t = log(inst.scale(p) * Ball::exact(q, p) / eps) / log(inst.growth(p));
    BigInt b = t.ceil_upper() - 1;
    if (b < 0) b = 0;
    if (!b.fits_slong_p()) throw std::logic_error("reduction bound out of range");
    return mpz_get_si(b.get_mpz_t());
}

inline ContinuedFraction expand_tau(const ReductionInstance& inst, std::size_t count,
                                    mpfr_prec_t start) {
    if (inst.tau_rational) return cf_expand(*inst.tau_rational, count);
    return cf_expand(inst.tau, count, start);
}

// Walk eligible convergents (q > 6M) of a shared expansion; nullopt if the
// cap is exhausted or the expansion ends (rational tau) without a positive
// epsilon.
inline std::optional<ReductionOutcome> walk_convergents(const ReductionInstance& inst,
                                                        const ContinuedFraction& cf,
                                                        mpfr_prec_t p) {
    BigInt six_m = 6 * inst.m_cap;
    std::size_t eligible = 0;
    for (std::size_t i = 0; i < cf.size(); ++i) {
        if (cf.q[i] <= six_m) continue;
        if (++eligible > reduction_convergent_cap) return std::nullopt;
        Ball eps = epsilon_at(inst, cf.q[i], p);
        if (!eps.is_certainly_positive()) continue; // <= 0 or undecided: advance
        return ReductionOutcome{i, cf.q[i], eps, threshold_bound(inst, cf.q[i], eps, p)};
    }
    return std::nullopt;
}

} // namespace detail

inline ReductionOutcome reduce_instance(const ReductionInstance& inst,
                                        mpfr_prec_t start = default_precision) {
    if (inst.m_cap < 1) throw parameter_error("reduce_instance: need M >= 1");
    std::size_t count = 80;
    for (;;) {
        ContinuedFraction cf = detail::expand_tau(inst, count, start);
        bool complete = cf.size() < count; // rational tau ran out
        if (auto hit = detail::walk_convergents(inst, cf, start)) return *hit;
        // only give up once the cap (or the whole expansion) was really seen
        BigInt six_m = 6 * inst.m_cap;
        std::size_t eligible = 0;
        for (std::size_t i = 0; i < cf.size(); ++i)
            if (cf.q[i] > six_m) ++eligible;
        if (complete || eligible > reduction_convergent_cap)
            throw reduction_failed_error("no positive epsilon among usable convergents for " +
                                         (inst.label.empty() ? std::string("instance")
                                                             : inst.label));
        count += 80;
    }
}

struct FamilyOutcome {
    long bound = 0;    // max over instances
    Ball epsilon_min;  // min certified epsilon over instances
    std::string worst_label;
    ReductionOutcome worst;
    std::size_t size = 0;
    std::size_t advanced = 0; // instances that skipped past the first eligible convergent
    std::size_t max_convergent_index = 0;
};

// All instances must share tau (they do, by construction of the families
// below); the expansion is computed once.
inline FamilyOutcome reduce_family(const std::vector<ReductionInstance>& family,
                                   mpfr_prec_t start = default_precision) {
    if (family.empty()) throw parameter_error("reduce_family: empty family");
    FamilyOutcome out;
    out.size = family.size();
    std::size_t count = 80;
    ContinuedFraction cf = detail::expand_tau(family.front(), count, start);
    bool have_min = false;
    for (const ReductionInstance& inst : family) {
        BigInt six_m = 6 * inst.m_cap;
        std::optional<ReductionOutcome> hit;
        for (;;) {
            hit = detail::walk_convergents(inst, cf, start);
            if (hit) break;
            std::size_t eligible = 0;
            for (std::size_t i = 0; i < cf.size(); ++i)
                if (cf.q[i] > six_m) ++eligible;
            bool complete = cf.size() < count;
            if (complete || eligible > reduction_convergent_cap)
                throw reduction_failed_error(
                    "no positive epsilon among usable convergents for " +
                    (inst.label.empty() ? std::string("instance") : inst.label));
            count += 80;
            cf = detail::expand_tau(inst, count, start);
        }
        std::size_t fe = 0;
        while (fe < cf.size() && cf.q[fe] <= six_m) ++fe;
        if (hit->convergent_index != fe) ++out.advanced;
        out.max_convergent_index = std::max(out.max_convergent_index, hit->convergent_index);
        if (out.worst_label.empty() || hit->bound > out.worst.bound) {
            out.worst = *hit;
            out.worst_label = inst.label;
        }
        out.bound = std::max(out.bound, hit->bound);
        if (!have_min || hit->epsilon.lower_rational() < out.epsilon_min.lower_rational()) {
            out.epsilon_min = hit->epsilon;
            have_min = true;
        }
    }
    return out;
}

// First-stage family: one instance per digit a, shift mu_a = log(a sqrt(D) /
// (b-1)) / log delta, scale 2(1 + 3 sqrt(D)) / log delta.
inline std::vector<ReductionInstance> build_lambda1_family(const SequenceParams& sp, int base,
                                                           const BigInt& m_cap, BoundMode mode,
                                                           mpfr_prec_t start = default_precision) {
    if (!sp.solver_admissible())
        throw parameter_error("build_lambda1_family: inadmissible parameters");
    if (base < 2) throw parameter_error("build_lambda1_family: base must be >= 2");
    RealGen tau = [sp, base](mpfr_prec_t p) {
        return log(Ball::exact(static_cast<long>(base), p)) / log(sp.delta(p));
    };
    RealGen growth = [sp](mpfr_prec_t p) { return sp.delta(p); };
    RealGen scale = [sp](mpfr_prec_t p) {
        return Ball::exact(2L, p) * (Ball::exact(1L, p) + Ball::exact(3L, p) * sp.sqrt_disc(p)) /
               log(sp.delta(p));
    };
    if (mode == BoundMode::paper) scale = constant_gen(round_up_sig(scale(start), 3));
    std::vector<ReductionInstance> out;
    for (int a = 1; a < base; ++a) {
        RealGen mu = [sp, base, a](mpfr_prec_t p) {
            return log(Ball::exact(static_cast<long>(a), p) * sp.sqrt_disc(p) /
                       Ball::exact(static_cast<long>(base - 1), p)) /
                   log(sp.delta(p));
        };
        out.push_back({tau, mu, scale, growth, m_cap, std::nullopt,
                       "lambda1 a=" + std::to_string(a)});
    }
    return out;
}

// Second-stage family: digit a and gap j >= 1, shift mu_{a,j} = log(a sqrt(D)
// / ((b-1)(1 - delta^{-j}))) / log delta, scale 16.2 sqrt(D) / log delta.
inline std::vector<ReductionInstance> build_lambda2_family(const SequenceParams& sp, int base,
                                                           const BigInt& m_cap, long nm_max,
                                                           BoundMode mode,
                                                           mpfr_prec_t start = default_precision) {
    if (!sp.solver_admissible())
        throw parameter_error("build_lambda2_family: inadmissible parameters");
    if (base < 2) throw parameter_error("build_lambda2_family: base must be >= 2");
    if (nm_max < 1) throw parameter_error("build_lambda2_family: need nm_max >= 1");
    RealGen tau = [sp, base](mpfr_prec_t p) {
        return log(Ball::exact(static_cast<long>(base), p)) / log(sp.delta(p));
    };
    RealGen growth = [sp](mpfr_prec_t p) { return sp.delta(p); };
    RealGen scale = [sp](mpfr_prec_t p) {
        return Ball::from_rational(Rational(162, 10), p) * sp.sqrt_disc(p) / log(sp.delta(p));
    };
    if (mode == BoundMode::paper) scale = constant_gen(round_up_sig(scale(start), 3));
    std::vector<ReductionInstance> out;
    for (int a = 1; a < base; ++a) {
        for (long j = 1; j <= nm_max; ++j) {
            RealGen mu = [sp, base, a, j](mpfr_prec_t p) {
                Ball one = Ball::exact(1L, p);
                Ball den = Ball::exact(static_cast<long>(base - 1), p) *
                           (one - pow_int(sp.delta(p), -j));
                return log(Ball::exact(static_cast<long>(a), p) * sp.sqrt_disc(p) / den) /
                       log(sp.delta(p));
            };
            out.push_back({tau, mu, scale, growth, m_cap, std::nullopt,
                           "lambda2 a=" + std::to_string(a) + " j=" + std::to_string(j)});
        }
    }
    return out;
}

// Linear-form magnitude guards: the scale inequality |Lambda| < A B^{-w} only
// holds once w is large enough that the form is small; below the returned
// minimum the exhaustive sweep is the authority.
inline long lambda1_guard_min(const SequenceParams& sp, mpfr_prec_t start = default_precision) {
    return refine(
        [&](mpfr_prec_t p) {
            Ball t = log(Ball::exact(2L, p) *
                         (Ball::exact(1L, p) + Ball::exact(3L, p) * sp.sqrt_disc(p))) /
                     log(sp.delta(p));
            auto f = t.certified_floor();
            if (!f) throw undecidable_error("lambda1 guard undecided");
            return mpz_get_si(f->get_mpz_t()) + 1;
        },
        start);
}

inline long lambda2_guard_min(const SequenceParams& sp, mpfr_prec_t start = default_precision) {
    return refine(
        [&](mpfr_prec_t p) {
            Ball t = log(Ball::exact(2L, p) * Ball::from_rational(Rational(81, 10), p) *
                         sp.sqrt_disc(p)) /
                     log(sp.delta(p));
            auto f = t.certified_floor();
            if (!f) throw undecidable_error("lambda2 guard undecided");
            return mpz_get_si(f->get_mpz_t()) + 1;
        },
        start);
}

} // namespace repdiff
