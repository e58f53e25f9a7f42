#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "error.hpp"

namespace repdiff {

using BigInt = mpz_class;
using Rational = mpq_class;

inline constexpr mpfr_prec_t default_precision = 2048;
inline constexpr mpfr_prec_t radius_precision = 64;
inline constexpr int max_precision_doublings = 4;

enum class Cmp { less, greater, undecidable };

namespace detail {

// RAII scratch register.
class Raw {
public:
    explicit Raw(mpfr_prec_t p) { mpfr_init2(v_, p); }
    ~Raw() { mpfr_clear(v_); }
    Raw(const Raw&) = delete;
    Raw& operator=(const Raw&) = delete;
    operator mpfr_ptr() { return v_; }
    // several mpfr_* entry points are macros that apply -> to their argument
    mpfr_ptr operator->() { return v_; }

private:
    mpfr_t v_;
};

} // namespace detail

// Closed interval [center - radius, center + radius] with an arbitrary-
// precision center and a 64-bit upward-rounded radius.  Every operation
// returns an enclosure of the exact image; decisions (sign, floor, order) are
// only reported when the enclosure certifies them.
class Ball {
public:
    explicit Ball(mpfr_prec_t prec = default_precision) {
        mpfr_init2(c_, prec);
        mpfr_set_zero(c_, 1);
        mpfr_init2(r_, radius_precision);
        mpfr_set_zero(r_, 1);
    }

    Ball(const Ball& o) {
        mpfr_init2(c_, mpfr_get_prec(o.c_));
        mpfr_set(c_, o.c_, MPFR_RNDN);
        mpfr_init2(r_, radius_precision);
        mpfr_set(r_, o.r_, MPFR_RNDU);
    }

    Ball(Ball&& o) noexcept {
        mpfr_init2(c_, MPFR_PREC_MIN);
        mpfr_init2(r_, MPFR_PREC_MIN);
        mpfr_swap(c_, o.c_);
        mpfr_swap(r_, o.r_);
    }

    Ball& operator=(Ball o) noexcept {
        mpfr_swap(c_, o.c_);
        mpfr_swap(r_, o.r_);
        return *this;
    }

    ~Ball() {
        mpfr_clear(c_);
        mpfr_clear(r_);
    }

    static Ball exact(long v, mpfr_prec_t prec = default_precision) {
        Ball out(prec);
        int t = mpfr_set_si(out.c_, v, MPFR_RNDN);
        if (t != 0) out.add_center_ulp();
        return out;
    }

    static Ball exact(const BigInt& v, mpfr_prec_t prec = default_precision) {
        Ball out(prec);
        int t = mpfr_set_z(out.c_, v.get_mpz_t(), MPFR_RNDN);
        if (t != 0) out.add_center_ulp();
        return out;
    }

    static Ball from_rational(const Rational& v, mpfr_prec_t prec = default_precision) {
        Ball out(prec);
        int t = mpfr_set_q(out.c_, v.get_mpq_t(), MPFR_RNDN);
        if (t != 0) out.add_center_ulp();
        return out;
    }

    // Smallest ball covering [lo, hi].
    static Ball from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec) {
        if (mpfr_cmp(lo, hi) > 0)
            throw std::logic_error("from_endpoints: lo > hi");
        Ball out(prec);
        int t = mpfr_add(out.c_, lo, hi, MPFR_RNDN);
        t |= mpfr_div_2ui(out.c_, out.c_, 1, MPFR_RNDN);
        detail::Raw d1(radius_precision), d2(radius_precision);
        mpfr_sub(d1, out.c_, lo, MPFR_RNDU);
        mpfr_sub(d2, hi, out.c_, MPFR_RNDU);
        mpfr_max(out.r_, d1, d2, MPFR_RNDU);
        if (mpfr_sgn(out.r_) < 0) mpfr_set_zero(out.r_, 1);
        if (t != 0) out.add_center_ulp();
        return out;
    }

    mpfr_prec_t precision() const { return mpfr_get_prec(c_); }
    bool is_exact() const { return mpfr_zero_p(r_); }

    // Dyadic endpoints, written into caller-initialized registers.
    void endpoints(mpfr_ptr lo, mpfr_ptr hi) const {
        mpfr_sub(lo, c_, r_, MPFR_RNDD);
        mpfr_add(hi, c_, r_, MPFR_RNDU);
    }

    Rational lower_rational() const {
        detail::Raw lo(precision() + 64), hi(precision() + 64);
        endpoints(lo, hi);
        Rational out;
        mpfr_get_q(out.get_mpq_t(), lo);
        return out;
    }

    Rational upper_rational() const {
        detail::Raw lo(precision() + 64), hi(precision() + 64);
        endpoints(lo, hi);
        Rational out;
        mpfr_get_q(out.get_mpq_t(), hi);
        return out;
    }

    Ball operator-() const {
        Ball out(*this);
        mpfr_neg(out.c_, out.c_, MPFR_RNDN); // exact
        return out;
    }

    Ball operator+(const Ball& o) const {
        Ball out(std::max(precision(), o.precision()));
        int t = mpfr_add(out.c_, c_, o.c_, MPFR_RNDN);
        mpfr_add(out.r_, r_, o.r_, MPFR_RNDU);
        if (t != 0) out.add_center_ulp();
        return out;
    }

    Ball operator-(const Ball& o) const {
        Ball out(std::max(precision(), o.precision()));
        int t = mpfr_sub(out.c_, c_, o.c_, MPFR_RNDN);
        mpfr_add(out.r_, r_, o.r_, MPFR_RNDU);
        if (t != 0) out.add_center_ulp();
        return out;
    }

    Ball operator*(const Ball& o) const {
        Ball out(std::max(precision(), o.precision()));
        int t = mpfr_mul(out.c_, c_, o.c_, MPFR_RNDN);
        // |a| rb + |b| ra + ra rb, all rounded up
        detail::Raw aa(radius_precision), bb(radius_precision), t1(radius_precision),
            t2(radius_precision);
        mpfr_abs(aa, c_, MPFR_RNDU);
        mpfr_abs(bb, o.c_, MPFR_RNDU);
        mpfr_mul(t1, aa, o.r_, MPFR_RNDU);
        mpfr_mul(t2, bb, r_, MPFR_RNDU);
        mpfr_add(t1, t1, t2, MPFR_RNDU);
        mpfr_mul(t2, r_, o.r_, MPFR_RNDU);
        mpfr_add(out.r_, t1, t2, MPFR_RNDU);
        if (t != 0) out.add_center_ulp();
        return out;
    }

    Ball operator/(const Ball& o) const {
        // need a certified bound 0 < m <= |denominator|
        detail::Raw m(radius_precision), bb(radius_precision);
        mpfr_abs(bb, o.c_, MPFR_RNDD);
        mpfr_sub(m, bb, o.r_, MPFR_RNDD);
        if (!(mpfr_sgn(m) > 0)) {
            if (o.is_exact() && mpfr_zero_p(o.c_))
                throw std::domain_error("division by exact zero");
            throw undecidable_error("division: denominator enclosure touches zero");
        }
        Ball out(std::max(precision(), o.precision()));
        int t = mpfr_div(out.c_, c_, o.c_, MPFR_RNDN);
        // |x/y - cx/cy| <= (rx |cy| + |cx| ry) / (|cy| (|cy| - ry))
        detail::Raw aa(radius_precision), num(radius_precision), t2(radius_precision),
            den(radius_precision);
        mpfr_abs(aa, c_, MPFR_RNDU);
        mpfr_abs(t2, o.c_, MPFR_RNDU);
        mpfr_mul(num, r_, t2, MPFR_RNDU);
        mpfr_mul(t2, aa, o.r_, MPFR_RNDU);
        mpfr_add(num, num, t2, MPFR_RNDU);
        mpfr_mul(den, bb, m, MPFR_RNDD);
        mpfr_div(out.r_, num, den, MPFR_RNDU);
        if (t != 0) out.add_center_ulp();
        return out;
    }

    bool contains_zero() const {
        detail::Raw lo(precision() + 64), hi(precision() + 64);
        endpoints(lo, hi);
        return mpfr_sgn(lo) <= 0 && mpfr_sgn(hi) >= 0;
    }

    bool is_certainly_positive() const {
        detail::Raw lo(precision() + 64), hi(precision() + 64);
        endpoints(lo, hi);
        return mpfr_sgn(lo) > 0;
    }

    bool is_certainly_negative() const {
        detail::Raw lo(precision() + 64), hi(precision() + 64);
        endpoints(lo, hi);
        return mpfr_sgn(hi) < 0;
    }

    // +1 / -1 when the enclosure excludes zero, 0 for the exact zero ball,
    // nullopt otherwise.
    std::optional<int> certified_sign() const {
        if (is_certainly_positive()) return 1;
        if (is_certainly_negative()) return -1;
        if (is_exact() && mpfr_zero_p(c_)) return 0;
        return std::nullopt;
    }

    std::optional<BigInt> certified_floor() const {
        detail::Raw lo(precision() + 64), hi(precision() + 64);
        endpoints(lo, hi);
        BigInt flo, fhi;
        mpfr_get_z(flo.get_mpz_t(), lo, MPFR_RNDD);
        mpfr_get_z(fhi.get_mpz_t(), hi, MPFR_RNDD);
        if (flo == fhi) return flo;
        return std::nullopt;
    }

    // ceil(upper endpoint): a certified integer >= every point of the ball.
    BigInt ceil_upper() const {
        detail::Raw lo(precision() + 64), hi(precision() + 64);
        endpoints(lo, hi);
        BigInt out;
        mpfr_get_z(out.get_mpz_t(), hi, MPFR_RNDU);
        return out;
    }

    BigInt floor_lower() const {
        detail::Raw lo(precision() + 64), hi(precision() + 64);
        endpoints(lo, hi);
        BigInt out;
        mpfr_get_z(out.get_mpz_t(), lo, MPFR_RNDD);
        return out;
    }

    bool certainly_le(const BigInt& v) const {
        detail::Raw lo(precision() + 64), hi(precision() + 64);
        endpoints(lo, hi);
        return mpfr_cmp_z(hi, v.get_mpz_t()) <= 0;
    }

    bool certainly_ge(const BigInt& v) const {
        detail::Raw lo(precision() + 64), hi(precision() + 64);
        endpoints(lo, hi);
        return mpfr_cmp_z(lo, v.get_mpz_t()) >= 0;
    }

    bool contains(const Rational& v) const {
        detail::Raw lo(precision() + 64), hi(precision() + 64);
        endpoints(lo, hi);
        return mpfr_cmp_q(lo, v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi, v.get_mpq_t()) >= 0;
    }

    bool contains(const Ball& o) const {
        return lower_rational() <= o.lower_rational() && o.upper_rational() <= upper_rational();
    }

    // Decimal rendering of the center; enclosure width is not encoded.
    std::string decimal(int significant_digits = 17) const {
        char fmt[32];
        std::snprintf(fmt, sizeof fmt, "%%.%dRg", significant_digits);
        char* s = nullptr;
        mpfr_asprintf(&s, fmt, static_cast<mpfr_srcptr>(c_));
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    std::string to_string() const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.20Rg", static_cast<mpfr_srcptr>(c_));
        std::string out(s);
        mpfr_free_str(s);
        char* t = nullptr;
        mpfr_asprintf(&t, "%.3Rg", static_cast<mpfr_srcptr>(r_));
        out += " +/- ";
        out += t;
        mpfr_free_str(t);
        return out;
    }

    friend Ball abs(const Ball& x) {
        Ball out(x);
        mpfr_abs(out.c_, out.c_, MPFR_RNDN); // exact
        return out;
    }

    friend Ball sqrt(const Ball& x) {
        mpfr_prec_t p = x.precision();
        detail::Raw lo(p + 64), hi(p + 64);
        x.endpoints(lo, hi);
        if (mpfr_sgn(hi) < 0) throw std::domain_error("sqrt of negative enclosure");
        if (mpfr_sgn(lo) < 0) throw undecidable_error("sqrt: enclosure touches negatives");
        detail::Raw slo(p), shi(p);
        mpfr_sqrt(slo, lo, MPFR_RNDD);
        mpfr_sqrt(shi, hi, MPFR_RNDU);
        return from_endpoints(slo, shi, p);
    }

    friend Ball log(const Ball& x) {
        mpfr_prec_t p = x.precision();
        detail::Raw lo(p + 64), hi(p + 64);
        x.endpoints(lo, hi);
        if (mpfr_sgn(hi) <= 0) throw std::domain_error("log of non-positive enclosure");
        if (mpfr_sgn(lo) <= 0) throw undecidable_error("log: enclosure touches zero");
        detail::Raw llo(p), lhi(p);
        mpfr_log(llo, lo, MPFR_RNDD);
        mpfr_log(lhi, hi, MPFR_RNDU);
        return from_endpoints(llo, lhi, p);
    }

    friend Ball exp(const Ball& x) {
        mpfr_prec_t p = x.precision();
        detail::Raw lo(p + 64), hi(p + 64);
        x.endpoints(lo, hi);
        detail::Raw elo(p), ehi(p);
        mpfr_exp(elo, lo, MPFR_RNDD);
        mpfr_exp(ehi, hi, MPFR_RNDU);
        return from_endpoints(elo, ehi, p);
    }

    friend Ball pow_int(const Ball& x, long e) {
        mpfr_prec_t p = x.precision();
        if (e == 0) return Ball::exact(1L, p);
        detail::Raw lo(p + 64), hi(p + 64);
        x.endpoints(lo, hi);
        if (mpfr_sgn(lo) > 0) {
            // monotone on the positive axis
            detail::Raw plo(p), phi(p);
            if (e > 0) {
                mpfr_pow_si(plo, lo, e, MPFR_RNDD);
                mpfr_pow_si(phi, hi, e, MPFR_RNDU);
            } else {
                mpfr_pow_si(plo, hi, e, MPFR_RNDD);
                mpfr_pow_si(phi, lo, e, MPFR_RNDU);
            }
            return from_endpoints(plo, phi, p);
        }
        if (e < 0) return Ball::exact(1L, p) / pow_int(x, -e);
        // sign-mixed base: square and multiply with ball products
        Ball acc = Ball::exact(1L, p);
        Ball base(x);
        unsigned long k = static_cast<unsigned long>(e);
        while (k > 0) {
            if (k & 1) acc = acc * base;
            k >>= 1;
            if (k > 0) base = base * base;
        }
        return acc;
    }

    friend Cmp compare(const Ball& a, const Ball& b) {
        mpfr_prec_t p = std::max(a.precision(), b.precision()) + 64;
        detail::Raw alo(p), ahi(p), blo(p), bhi(p);
        a.endpoints(alo, ahi);
        b.endpoints(blo, bhi);
        if (mpfr_cmp(ahi, blo) < 0) return Cmp::less;
        if (mpfr_cmp(alo, bhi) > 0) return Cmp::greater;
        return Cmp::undecidable;
    }

    friend std::ostream& operator<<(std::ostream& os, const Ball& x) {
        return os << x.to_string();
    }

private:
    void add_center_ulp() {
        if (mpfr_zero_p(c_))
            throw std::logic_error("rounded-to-zero center");
        detail::Raw u(radius_precision);
        mpfr_set_ui_2exp(u, 1, mpfr_get_exp(c_) - precision(), MPFR_RNDU);
        mpfr_add(r_, r_, u, MPFR_RNDU);
    }

    mpfr_t c_;
    mpfr_t r_;
};

// Distance from x to the nearest integer, as an enclosure of the exact image
// over x.  Always sound; a wide input just yields the trivial result [0, 1/2].
inline Ball nearest_int_distance(const Ball& x) {
    mpfr_prec_t p = x.precision();
    detail::Raw half(8), zero(8);
    mpfr_set_d(half, 0.5, MPFR_RNDN);
    mpfr_set_zero(zero, 1);

    detail::Raw xlo(p + 64), xhi(p + 64);
    x.endpoints(xlo, xhi);
    detail::Raw width(radius_precision);
    mpfr_sub(width, xhi, xlo, MPFR_RNDU);
    if (mpfr_cmp_d(width, 0.5) >= 0)
        return Ball::from_endpoints(zero, half, p);

    BigInt z;
    mpfr_get_z(z.get_mpz_t(), xlo, MPFR_RNDN);
    Ball y = x - Ball::exact(z, p);
    detail::Raw ylo(p + 64), yhi(p + 64);
    y.endpoints(ylo, yhi);
    // |y| < 3/4, so the nearest integer to any point of y is in {-1, 0, 1} and
    // dist(t) = min(|t|, 1 - |t|); take the image of that over [ylo, yhi].
    auto g = [&](mpfr_srcptr t, mpfr_rnd_t rnd, mpfr_ptr out) {
        detail::Raw a(p + 64), b(p + 64);
        mpfr_abs(a, t, MPFR_RNDN); // exact
        mpfr_ui_sub(b, 1, a, rnd);
        mpfr_min(out, a, b, rnd);
    };
    detail::Raw g1(p + 64), g2(p + 64), lo(p + 64), hi(p + 64);

    bool spans_zero = mpfr_sgn(ylo) <= 0 && mpfr_sgn(yhi) >= 0;
    if (spans_zero) {
        mpfr_set_zero(lo, 1);
    } else {
        g(ylo, MPFR_RNDD, g1);
        g(yhi, MPFR_RNDD, g2);
        mpfr_min(lo, g1, g2, MPFR_RNDD);
        if (mpfr_sgn(lo) < 0) mpfr_set_zero(lo, 1);
    }
    bool spans_half = (mpfr_cmp_d(ylo, 0.5) <= 0 && mpfr_cmp_d(yhi, 0.5) >= 0) ||
                      (mpfr_cmp_d(ylo, -0.5) <= 0 && mpfr_cmp_d(yhi, -0.5) >= 0);
    if (spans_half) {
        mpfr_set(hi, half, MPFR_RNDU);
    } else {
        g(ylo, MPFR_RNDU, g1);
        g(yhi, MPFR_RNDU, g2);
        mpfr_max(hi, g1, g2, MPFR_RNDU);
        if (mpfr_cmp_d(hi, 0.5) > 0) mpfr_set(hi, half, MPFR_RNDN);
    }
    return Ball::from_endpoints(lo, hi, p);
}

// A real number presented as "an enclosure at any requested precision".
using RealGen = std::function<Ball(mpfr_prec_t)>;

inline RealGen constant_gen(Rational v) {
    return [v = std::move(v)](mpfr_prec_t p) { return Ball::from_rational(v, p); };
}

inline RealGen constant_gen(BigInt v) {
    return [v = std::move(v)](mpfr_prec_t p) { return Ball::exact(v, p); };
}

// Evaluate f at increasing precision until it stops throwing
// undecidable_error; double at most max_precision_doublings times.
template <typename F>
auto refine(F&& f, mpfr_prec_t start = default_precision) -> decltype(f(start)) {
    mpfr_prec_t p = start;
    for (int step = 0;; ++step) {
        try {
            return f(p);
        } catch (const undecidable_error& e) {
            if (step >= max_precision_doublings)
                throw precision_exhausted_error(
                    std::string("no certified decision at ") + std::to_string(p) +
                    " bits: " + e.what());
            p *= 2;
        }
    }
}

} // namespace repdiff
