#pragma once

#include <repdiff/ball.hpp>

#include <string>

namespace testutil {

inline repdiff::BigInt pow10(unsigned long k) {
    repdiff::BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
    return p;
}

// Exact rational from a plain decimal literal like "-0.004927".
inline repdiff::Rational dec(const std::string& s) {
    std::string t = s;
    bool neg = !t.empty() && t[0] == '-';
    if (neg || (!t.empty() && t[0] == '+')) t.erase(0, 1);
    unsigned long frac = 0;
    if (auto dot = t.find('.'); dot != std::string::npos) {
        frac = t.size() - dot - 1;
        t.erase(dot, 1);
    }
    repdiff::Rational out(repdiff::BigInt(t, 10), pow10(frac));
    out.canonicalize();
    if (neg) out = -out;
    return out;
}

// Smallest ball covering the rational interval [lo, hi].
inline repdiff::Ball span(const repdiff::Rational& lo, const repdiff::Rational& hi,
                          mpfr_prec_t p = 256) {
    repdiff::detail::Raw l(p), h(p);
    mpfr_set_q(l, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(h, hi.get_mpq_t(), MPFR_RNDU);
    return repdiff::Ball::from_endpoints(l, h, p);
}

// The whole enclosure lies strictly inside (lo, hi).
inline bool in_window(const repdiff::Ball& b, const std::string& lo, const std::string& hi) {
    return dec(lo) < b.lower_rational() && b.upper_rational() < dec(hi);
}

} // namespace testutil
