#pragma once

#include <string>
#include <vector>

#include "ball.hpp"
#include "error.hpp"
#include "lucas.hpp"

namespace repdiff {

enum class BoundMode { paper, rigorous };

inline const char* to_string(BoundMode m) {
    return m == BoundMode::paper ? "paper" : "rigorous";
}

// Round a certainly-positive value up to `sig` significant decimal digits.
// Works on the certified upper endpoint, so the result is itself a certified
// upper bound; returned exactly as a rational.
inline Rational round_up_sig(const Ball& x, int sig) {
    if (sig < 1) throw parameter_error("round_up_sig: need sig >= 1");
    if (!x.is_certainly_positive())
        throw undecidable_error("round_up_sig: value not certainly positive");
    Rational h = x.upper_rational();
    // decimal exponent e with 10^e <= h < 10^{e+1}
    long e;
    BigInt ip = h.get_num() / h.get_den();
    if (ip > 0) {
        e = static_cast<long>(ip.get_str().size()) - 1;
    } else {
        e = -1;
        Rational t = h * 10;
        while (t < 1) {
            t *= 10;
            --e;
        }
    }
    long shift = e - sig + 1;
    BigInt p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift >= 0 ? shift : -shift));
    Rational scale = shift >= 0 ? Rational(p10) : Rational(1) / Rational(p10);
    Rational scaled = h / scale;
    BigInt mant;
    mpz_cdiv_q(mant.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    return Rational(mant) * scale;
}

// 1.4 * 30^{s+3} * s^{4.5} * d^2 (1 + log d)  -- the constant in Matveev's
// lower bound for linear forms in s logarithms over a degree-d field.
inline Ball matveev_constant(int s, int d, mpfr_prec_t p = default_precision) {
    if (s < 1 || d < 1) throw parameter_error("matveev_constant: need s >= 1, d >= 1");
    Ball sb = Ball::exact(static_cast<long>(s), p);
    Ball c = Ball::from_rational(Rational(7, 5), p);
    c = c * pow_int(Ball::exact(30L, p), s + 3);
    c = c * pow_int(sb, 4) * sqrt(sb);
    c = c * Ball::exact(static_cast<long>(d) * d, p);
    c = c * (Ball::exact(1L, p) + log(Ball::exact(static_cast<long>(d), p)));
    return c;
}

struct MatveevInstance {
    int num_logs;               // s
    int degree;                 // d = [K : Q]
    std::vector<Ball> a_values; // A_i >= max(d h(eta_i), |log eta_i|, 0.16)
    Ball b_max;                 // B >= max |b_i|
};

// log|Lambda| > -1.4 * 30^{s+3} s^{4.5} d^2 (1+log d)(1+log B) A_1...A_s
inline Ball matveev_lower_bound(const MatveevInstance& mi) {
    if (mi.a_values.size() != static_cast<std::size_t>(mi.num_logs))
        throw parameter_error("matveev_lower_bound: one A value per logarithm");
    mpfr_prec_t p = mi.b_max.precision();
    Rational low(16, 100);
    for (const Ball& a : mi.a_values) {
        if (a.upper_rational() < low)
            throw parameter_error("matveev_lower_bound: A_i below 0.16");
        if (a.lower_rational() < low)
            throw undecidable_error("matveev_lower_bound: A_i >= 0.16 undecided");
    }
    if (mi.b_max.upper_rational() < 1)
        throw parameter_error("matveev_lower_bound: B below 1");
    if (mi.b_max.lower_rational() < 1)
        throw undecidable_error("matveev_lower_bound: B >= 1 undecided");
    Ball bound = matveev_constant(mi.num_logs, mi.degree, p);
    bound = bound * (Ball::exact(1L, p) + log(mi.b_max));
    for (const Ball& a : mi.a_values) bound = bound * a;
    return -bound;
}

// h(delta) = (1/2) log delta: delta is a quadratic algebraic integer whose
// conjugate has absolute value 1/delta.
inline Ball log_height_of_delta(const SequenceParams& sp, mpfr_prec_t p = default_precision) {
    if (!sp.solver_admissible())
        throw parameter_error("log_height_of_delta: need s in {-1,1}, r >= 1");
    return log(sp.delta(p)) / Ball::exact(2L, p);
}

inline Ball log_height_rational(const BigInt& num, const BigInt& den,
                                mpfr_prec_t p = default_precision) {
    if (den < 1) throw parameter_error("log_height_rational: need den >= 1");
    BigInt g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) throw parameter_error("log_height_rational: fraction not in lowest terms");
    BigInt m = abs(num) > den ? BigInt(abs(num)) : den;
    if (m == 1) return Ball::exact(0L, p);
    return log(Ball::exact(m, p));
}

// Certified enclosure of 1 + n log(delta)/log(base): with U_n <= delta^n, a
// repdigit value U_n - U_m below b^k forces k < this.
inline Ball k_bound(const SequenceParams& sp, int base, const BigInt& n,
                    mpfr_prec_t p = default_precision) {
    if (!sp.solver_admissible()) throw parameter_error("k_bound: inadmissible parameters");
    if (base < 2) throw parameter_error("k_bound: base must be >= 2");
    if (n < 0) throw parameter_error("k_bound: n must be >= 0");
    return Ball::exact(1L, p) +
           Ball::exact(n, p) * log(sp.delta(p)) / log(Ball::exact(static_cast<long>(base), p));
}

namespace detail {

// Folded coefficient of the (1 + log D) term shared by both linear-form
// stages: paper mode folds it to the round 2e12 that the rest of the rounded
// constant chain is built on; rigorous mode carries the exact
// 2 * matveev_constant(3, 2).
inline Ball folded_matveev(BoundMode mode, mpfr_prec_t p) {
    Ball exact_folded = matveev_constant(3, 2, p) * Ball::exact(2L, p);
    if (mode == BoundMode::rigorous) return exact_folded;
    Ball k = Ball::from_rational(Rational(BigInt("2000000000000")), p);
    if (!(k - exact_folded).is_certainly_positive())
        throw std::logic_error("folded constant exceeds 2e12");
    return k;
}

} // namespace detail

// Certified integer bound X with n - m <= X, from the first linear-form stage
// evaluated at degree-parameter enclosure D.
inline BigInt nm_bound(const SequenceParams& sp, int base, const Ball& D, BoundMode mode,
                       mpfr_prec_t p = default_precision) {
    if (!sp.solver_admissible()) throw parameter_error("nm_bound: inadmissible parameters");
    if (base < 2) throw parameter_error("nm_bound: base must be >= 2");
    if (D.lower_rational() < 1) throw parameter_error("nm_bound: need D >= 1");
    Ball logd = log(sp.delta(p));
    Ball logb = log(Ball::exact(static_cast<long>(base), p));
    Ball logD2 = Ball::exact(2L, p) * logb + log(Ball::exact(sp.discriminant, p));
    Ball k = detail::folded_matveev(mode, p);
    Ball head = log(Ball::exact(1L, p) + Ball::exact(3L, p) * sp.sqrt_disc(p));
    Ball expr = (head + k * (Ball::exact(1L, p) + log(D)) * logd * logb * logD2) / logd;
    return expr.ceil_upper();
}

struct ImplicitBound {
    Ball c1;
    long c2;
};

// n < c1 (1 + log(c2 n))^2, the shape handed to the two-log resolution lemma.
inline ImplicitBound n_bound_implicit(const SequenceParams& sp, int base, BoundMode mode,
                                      mpfr_prec_t start = default_precision) {
    if (!sp.solver_admissible())
        throw parameter_error("n_bound_implicit: inadmissible parameters");
    if (base < 2) throw parameter_error("n_bound_implicit: base must be >= 2");
    return refine(
        [&](mpfr_prec_t p) {
            Ball logd = log(sp.delta(p));
            Ball logb = log(Ball::exact(static_cast<long>(base), p));
            Ball sd = sp.sqrt_disc(p);
            Ball half = Ball::from_rational(Rational(1, 2), p);
            auto c2f = (logd / logb + half).certified_floor();
            if (!c2f) throw undecidable_error("c2 ceiling undecided");
            long c2 = std::max(2L, mpz_get_si(c2f->get_mpz_t()) + 1);
            Ball c2b = Ball::exact(c2, p);
            Ball xmin = Ball::exact(1L, p) + log(Ball::exact(2 * c2, p));
            Ball k = detail::folded_matveev(mode, p);
            Ball core = k * logd * logb *
                        (Ball::exact(2L, p) * logb + log(Ball::exact(sp.discriminant, p)));
            Ball xi0 = log(Ball::exact(4 * BigInt(base) * base * sp.discriminant, p) *
                           (Ball::exact(1L, p) + Ball::exact(3L, p) * sd));
            Ball tail = log(Ball::from_rational(Rational(81, 10), p) * sd) /
                        (logd * xmin * xmin);
            Ball c1;
            if (mode == BoundMode::paper) {
                Rational core_r = round_up_sig(core, 2);
                Rational xi0_r = round_up_sig(xi0, 3);
                Ball xihat_b = Ball::from_rational(core_r, p) +
                               Ball::from_rational(xi0_r, p) / xmin;
                Rational xihat = round_up_sig(xihat_b, 1);
                Ball c1_b = k * Ball::from_rational(xihat, p) * logb + tail;
                c1 = Ball::from_rational(round_up_sig(c1_b, 2), p);
            } else {
                c1 = k * (core + xi0 / xmin) * logb + tail;
            }
            return ImplicitBound{c1, c2};
        },
        start);
}

// Smallest certified L with: l / (log l)^r < H for all admissible l implies
// l < 2^r H (log H)^r =: L.  Hypothesis H > (4 r^2)^r.
inline BigInt gsl_resolve(int r, const Ball& h) {
    if (r < 1) throw parameter_error("gsl_resolve: need r >= 1");
    BigInt hyp = BigInt(4) * r * r;
    mpz_pow_ui(hyp.get_mpz_t(), hyp.get_mpz_t(), static_cast<unsigned long>(r));
    if (h.upper_rational() <= Rational(hyp))
        throw parameter_error("gsl_resolve: hypothesis H > (4r^2)^r fails");
    if (h.lower_rational() <= Rational(hyp))
        throw undecidable_error("gsl_resolve: hypothesis H > (4r^2)^r undecided");
    mpfr_prec_t p = h.precision();
    Ball l = pow_int(Ball::exact(2L, p), r) * h * pow_int(log(h), r);
    return l.ceil_upper();
}

struct BoundReport {
    BoundMode mode = BoundMode::paper;
    long c2 = 0;
    Ball c1;
    Ball h_value;
    BigInt n_matveev; // certified bound on n
    BigInt m_cap;     // c2 * n_matveev, the reduction cap M
    BigInt nm_matveev;
    Ball k_bound_at_n;
    Ball fixed_point_c1; // any valid bound must be >= this
    Ball fixed_point_h;  // GSL looseness reference (within 10x)
    bool gsl_within_10x = false;
};

namespace detail {

template <typename F>
inline Ball fixed_point(F&& f, mpfr_prec_t p) {
    Ball n = Ball::exact(2L, p);
    for (int i = 0; i < 400; ++i) n = f(n);
    return n;
}

} // namespace detail

// Resolve the implicit inequality into an explicit integer bound on n,
// cross-checked against the fixed point it must dominate.
inline BoundReport n_bound_explicit(const SequenceParams& sp, int base, BoundMode mode,
                                    mpfr_prec_t start = default_precision) {
    BoundReport out;
    out.mode = mode;
    ImplicitBound ib = n_bound_implicit(sp, base, mode, start);
    out.c1 = ib.c1;
    out.c2 = ib.c2;
    return refine(
        [&](mpfr_prec_t p) {
            Ball y = (Ball::exact(1L, p) + log(Ball::exact(out.c2, p))) /
                         log(Ball::exact(2L, p)) +
                     Ball::exact(1L, p);
            y = y * y;
            Ball h = ib.c1 * y;
            if (mode == BoundMode::paper) h = Ball::from_rational(round_up_sig(h, 2), p);
            out.h_value = h;
            if (mode == BoundMode::paper) {
                Ball raw = pow_int(Ball::exact(2L, p), 2) * h * pow_int(log(h), 2);
                Rational n_r = round_up_sig(raw, 2);
                if (n_r.get_den() != 1)
                    throw std::logic_error("paper-mode bound is not an integer");
                out.n_matveev = n_r.get_num();
            } else {
                out.n_matveev = gsl_resolve(2, h);
            }
            out.m_cap = out.c2 * out.n_matveev;

            out.fixed_point_c1 = detail::fixed_point(
                [&](const Ball& n) {
                    Ball t = Ball::exact(1L, p) + log(Ball::exact(out.c2, p) * n);
                    return ib.c1 * t * t;
                },
                p);
            out.fixed_point_h = detail::fixed_point(
                [&](const Ball& n) {
                    Ball t = log(n);
                    return h * t * t;
                },
                p);
            if (Rational(out.n_matveev) < out.fixed_point_c1.lower_rational())
                throw std::logic_error("explicit bound fell below its fixed point");
            out.gsl_within_10x =
                Rational(out.n_matveev) <= out.fixed_point_h.upper_rational() * 10;

            out.k_bound_at_n = k_bound(sp, base, out.n_matveev, p);
            out.nm_matveev = nm_bound(sp, base, Ball::exact(out.m_cap, p), mode, p);
            return out;
        },
        start);
}

} // namespace repdiff
