#pragma once

#include <cstddef>
#include <vector>

#include "ball.hpp"
#include "error.hpp"

namespace repdiff {

// Partial quotients a_0, a_1, ... with convergents p[i]/q[i]; the usual
// recurrence p_i = a_i p_{i-1} + p_{i-2} seeded by (1, 0) and (0, 1).
struct ContinuedFraction {
    std::vector<BigInt> quotients;
    std::vector<BigInt> p;
    std::vector<BigInt> q;

    std::size_t size() const { return quotients.size(); }

    void push(const BigInt& a) {
        BigInt pm1 = 1, pm2 = 0, qm1 = 0, qm2 = 1; // p_{-1}, p_{-2}, q_{-1}, q_{-2}
        if (!p.empty()) {
            pm1 = p.back();
            qm1 = q.back();
            pm2 = p.size() >= 2 ? p[p.size() - 2] : BigInt(1);
            qm2 = q.size() >= 2 ? q[q.size() - 2] : BigInt(0);
        }
        quotients.push_back(a);
        p.push_back(a * pm1 + pm2);
        q.push_back(a * qm1 + qm2);
    }
};

// Exact Euclidean expansion of a rational; stops early at the last quotient
// when the expansion terminates before `count` terms.
inline ContinuedFraction cf_expand(const Rational& x, std::size_t count) {
    ContinuedFraction out;
    BigInt num(x.get_num()), den(x.get_den()); // den > 0, canonical
    while (out.size() < count && den != 0) {
        BigInt a, rem;
        mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        out.push(a);
        num = den;
        den = rem;
    }
    return out;
}

// Certified expansion of an irrational presented as a generator: every
// partial quotient is a certified floor of the tail enclosure.  Precision is
// doubled (restarting the expansion) while a floor is undecided; exhaustion of
// the retry policy surfaces as precision_exhausted_error, which is also what a
// rational input eventually triggers on its terminating quotient.
inline ContinuedFraction cf_expand(const RealGen& x, std::size_t count,
                                   mpfr_prec_t start = default_precision) {
    return refine(
        [&](mpfr_prec_t prec) {
            ContinuedFraction out;
            Ball t = x(prec);
            for (std::size_t i = 0; i < count; ++i) {
                auto a = t.certified_floor();
                if (!a)
                    throw undecidable_error("cf_expand: tail floor undecided at term " +
                                            std::to_string(i));
                out.push(*a);
                if (i + 1 < count)
                    t = Ball::exact(1L, prec) / (t - Ball::exact(*a, prec));
            }
            return out;
        },
        start);
}

} // namespace repdiff
