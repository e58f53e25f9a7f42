#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ball.hpp"
#include "error.hpp"

namespace repdiff {

// U_0 = 0, U_1 = 1, U_{n+1} = r U_n + s U_{n-1}, with positive discriminant
// r^2 + 4s so the characteristic roots are real and distinct.
struct SequenceParams {
    long r;
    long s;
    BigInt discriminant;

    SequenceParams(long r_, long s_) : r(r_), s(s_), discriminant(BigInt(r_) * r_ + 4 * s_) {
        if (discriminant <= 0)
            throw parameter_error("discriminant r^2 + 4s must be positive");
    }

    // The solver's bound machinery needs |gamma| = 1/delta and delta > 1,
    // i.e. s in {-1, 1} and r >= 1 (s = -1 forces r >= 3 via the discriminant).
    bool solver_admissible() const { return (s == 1 || s == -1) && r >= 1; }

    Ball sqrt_disc(mpfr_prec_t p) const { return sqrt(Ball::exact(discriminant, p)); }

    Ball delta(mpfr_prec_t p) const {
        return (Ball::exact(r, p) + sqrt_disc(p)) / Ball::exact(2L, p);
    }

    Ball gamma_root(mpfr_prec_t p) const {
        return (Ball::exact(r, p) - sqrt_disc(p)) / Ball::exact(2L, p);
    }
};

inline BigInt lucas_u(const SequenceParams& sp, unsigned long n) {
    BigInt a = 0, b = 1; // U_0, U_1
    if (n == 0) return a;
    for (unsigned long i = 1; i < n; ++i) {
        BigInt c = sp.r * b + sp.s * a;
        a = b;
        b = c;
    }
    return b;
}

inline std::vector<BigInt> lucas_prefix(const SequenceParams& sp, unsigned long n_max) {
    std::vector<BigInt> u;
    u.reserve(n_max + 1);
    u.push_back(0);
    if (n_max >= 1) u.push_back(1);
    for (unsigned long n = 2; n <= n_max; ++n)
        u.push_back(sp.r * u[n - 1] + sp.s * u[n - 2]);
    return u;
}

// (delta^n - gamma^n) / (delta - gamma); encloses the exact U_n.
inline Ball binet(const SequenceParams& sp, unsigned long n, mpfr_prec_t p = default_precision) {
    Ball dn = pow_int(sp.delta(p), static_cast<long>(n));
    Ball gn = pow_int(sp.gamma_root(p), static_cast<long>(n));
    return (dn - gn) / sp.sqrt_disc(p);
}

// Certifies delta^{n-2} <= U_n <= delta^n (valid for s in {-1,1}, r >= 1).
inline bool check_dominant_root_bounds(const SequenceParams& sp, unsigned long n,
                                       mpfr_prec_t start = default_precision) {
    if (!sp.solver_admissible())
        throw parameter_error("dominant-root bounds need s in {-1,1} and r >= 1");
    if (n < 1) throw parameter_error("dominant-root bounds need n >= 1");
    Rational u(lucas_u(sp, n));
    return refine(
        [&](mpfr_prec_t p) {
            Ball lo = pow_int(sp.delta(p), static_cast<long>(n) - 2);
            Ball hi = pow_int(sp.delta(p), static_cast<long>(n));
            bool lo_ok;
            if (lo.upper_rational() <= u)
                lo_ok = true;
            else if (lo.lower_rational() > u)
                return false;
            else
                throw undecidable_error("dominant-root lower bound undecided");
            bool hi_ok;
            if (hi.lower_rational() >= u)
                hi_ok = true;
            else if (hi.upper_rational() < u)
                return false;
            else
                throw undecidable_error("dominant-root upper bound undecided");
            return lo_ok && hi_ok;
        },
        start);
}

// a repeated k times in base b: a (b^k - 1)/(b - 1).
inline BigInt repdigit_value(int base, int digit, long length) {
    if (base < 2) throw parameter_error("base must be >= 2");
    if (digit < 1 || digit >= base) throw parameter_error("digit must be in [1, base-1]");
    if (length < 1) throw parameter_error("repdigit length must be >= 1");
    BigInt bk;
    mpz_ui_pow_ui(bk.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(length));
    return digit * (bk - 1) / (base - 1);
}

// Inverse of repdigit_value: (digit, length) if v's base-b expansion repeats a
// single nonzero digit.
inline std::optional<std::pair<int, long>> as_repdigit(const BigInt& v, int base) {
    if (base < 2) throw parameter_error("base must be >= 2");
    if (v <= 0) return std::nullopt;
    BigInt t = v;
    long digit = -1, length = 0;
    while (t > 0) {
        BigInt quo;
        unsigned long rem = mpz_fdiv_q_ui(quo.get_mpz_t(), t.get_mpz_t(),
                                          static_cast<unsigned long>(base));
        if (digit == -1)
            digit = static_cast<long>(rem);
        else if (digit != static_cast<long>(rem))
            return std::nullopt;
        ++length;
        t = quo;
    }
    if (digit == 0) return std::nullopt; // unreachable for v > 0; kept for clarity
    return std::make_pair(static_cast<int>(digit), length);
}

struct Solution {
    unsigned long n;
    unsigned long m;
    int digit;
    long length;
    BigInt value; // U_n - U_m == repdigit_value(base, digit, length)
};

// Exhaustive sweep of U_n - U_m over n <= n_max, m < n; base-b repdigits with
// at least min_length digits.  m starts at 0 when allow_m_zero.
inline std::vector<Solution> enumerate_solutions(const SequenceParams& sp, int base,
                                                 unsigned long n_max, long min_length = 1,
                                                 bool allow_m_zero = false) {
    if (base < 2) throw parameter_error("base must be >= 2");
    if (min_length < 1) throw parameter_error("min length must be >= 1");
    std::vector<BigInt> u = lucas_prefix(sp, n_max);
    std::vector<Solution> out;
    for (unsigned long n = 1; n <= n_max; ++n) {
        for (unsigned long m = allow_m_zero ? 0 : 1; m < n; ++m) {
            BigInt d = u[n] - u[m];
            if (d <= 0) continue;
            if (auto rd = as_repdigit(d, base); rd && rd->second >= min_length)
                out.push_back({n, m, rd->first, rd->second, d});
        }
    }
    return out;
}

} // namespace repdiff
