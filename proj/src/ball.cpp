// SPDX-License-Identifier: Apache-2.0
#include "modone/ball.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "modone/errors.hpp"

namespace modone {

namespace {

// Shared scratch registers for radius arithmetic, one set per thread.
struct Scratch {
    mpfr_t a, b, c, ulp;
    Scratch() {
        mpfr_init2(a, Ball::kRadiusPrec);
        mpfr_init2(b, Ball::kRadiusPrec);
        mpfr_init2(c, Ball::kRadiusPrec);
        mpfr_init2(ulp, 16);
    }
    ~Scratch() { mpfr_clears(a, b, c, ulp, nullptr); }
};

Scratch& scratch() {
    thread_local Scratch s;
    return s;
}

// One ulp of `mid` at its own precision, an upper bound for the 0.5 ulp
// worst-case error of a round-to-nearest operation.
void add_ulp(mpfr_t rad, mpfr_srcptr mid) {
    Scratch& s = scratch();
    mpfr_exp_t e = mpfr_zero_p(mid) ? mpfr_get_emin() : mpfr_get_exp(mid);
    mpfr_set_ui_2exp(s.ulp, 1, e - mpfr_get_prec(mid), MPFR_RNDU);
    mpfr_add(rad, rad, s.ulp, MPFR_RNDU);
}

}  // namespace

Ball::Ball(mpfr_prec_t prec) {
    mpfr_init2(mid_, prec);
    mpfr_init2(rad_, kRadiusPrec);
    mpfr_set_zero(mid_, 1);
    mpfr_set_zero(rad_, 1);
}

Ball::Ball(const Ball& o) {
    mpfr_init2(mid_, mpfr_get_prec(o.mid_));
    mpfr_init2(rad_, kRadiusPrec);
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

Ball::Ball(Ball&& o) noexcept {
    mpfr_init2(mid_, MPFR_PREC_MIN);
    mpfr_init2(rad_, kRadiusPrec);
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
}

Ball& Ball::operator=(const Ball& o) {
    if (this != &o) {
        mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
        mpfr_set(mid_, o.mid_, MPFR_RNDN);
        mpfr_set(rad_, o.rad_, MPFR_RNDU);
    }
    return *this;
}

Ball& Ball::operator=(Ball&& o) noexcept {
    if (this != &o) {
        mpfr_swap(mid_, o.mid_);
        mpfr_swap(rad_, o.rad_);
    }
    return *this;
}

Ball::~Ball() {
    mpfr_clear(mid_);
    mpfr_clear(rad_);
}

void Ball::absorb_rounding(int ternary) {
    if (ternary != 0) add_ulp(rad_, mid_);
}

Ball Ball::from_rational(const Rational& q, mpfr_prec_t prec) {
    Ball r(prec);
    int t = mpfr_set_q(r.mid_, q.get_mpq_t(), MPFR_RNDN);
    r.absorb_rounding(t);
    return r;
}

Ball Ball::from_integer(long v, mpfr_prec_t prec) {
    Ball r(prec);
    int t = mpfr_set_si(r.mid_, v, MPFR_RNDN);
    r.absorb_rounding(t);
    return r;
}

Ball Ball::from_mpz(const Integer& v, mpfr_prec_t prec) {
    Ball r(prec);
    int t = mpfr_set_z(r.mid_, v.get_mpz_t(), MPFR_RNDN);
    r.absorb_rounding(t);
    return r;
}

Ball Ball::sqrt_ui(unsigned long d, mpfr_prec_t prec) {
    Ball r(prec);
    int t = mpfr_sqrt_ui(r.mid_, d, MPFR_RNDN);
    r.absorb_rounding(t);
    return r;
}

Ball Ball::at_prec(const Ball& o, mpfr_prec_t prec) {
    Ball r(prec);
    int t = mpfr_set(r.mid_, o.mid_, MPFR_RNDN);
    mpfr_set(r.rad_, o.rad_, MPFR_RNDU);
    r.absorb_rounding(t);
    return r;
}

void Ball::lower(mpfr_ptr out) const { mpfr_sub(out, mid_, rad_, MPFR_RNDD); }

void Ball::upper(mpfr_ptr out) const { mpfr_add(out, mid_, rad_, MPFR_RNDU); }

bool Ball::contains(const Rational& q) const {
    mpfr_t bound;
    mpfr_init2(bound, prec() + 32);
    lower(bound);
    bool ok = mpfr_cmp_q(bound, q.get_mpq_t()) <= 0;
    if (ok) {
        upper(bound);
        ok = mpfr_cmp_q(bound, q.get_mpq_t()) >= 0;
    }
    mpfr_clear(bound);
    return ok;
}

bool Ball::contains_zero() const { return mpfr_cmpabs(mid_, rad_) <= 0; }

int Ball::sign_lower() const {
    mpfr_t bound;
    mpfr_init2(bound, prec() + 32);
    lower(bound);
    int s = mpfr_sgn(bound);
    mpfr_clear(bound);
    return s < 0 ? -1 : (s > 0 ? 1 : 0);
}

void Ball::shrink_exact() {
    if (!is_exact() || mpfr_zero_p(mid_)) return;
    mpfr_prec_t need = mpfr_min_prec(mid_);
    if (need < MPFR_PREC_MIN) need = MPFR_PREC_MIN;
    if (need < prec()) mpfr_prec_round(mid_, need, MPFR_RNDN);
}

Ball& Ball::neg_assign() {
    mpfr_neg(mid_, mid_, MPFR_RNDN);
    return *this;
}

Ball& Ball::add_assign(const Ball& o) {
    int t = mpfr_add(mid_, mid_, o.mid_, MPFR_RNDN);
    mpfr_add(rad_, rad_, o.rad_, MPFR_RNDU);
    absorb_rounding(t);
    return *this;
}

Ball& Ball::sub_assign(const Ball& o) {
    int t = mpfr_sub(mid_, mid_, o.mid_, MPFR_RNDN);
    mpfr_add(rad_, rad_, o.rad_, MPFR_RNDU);
    absorb_rounding(t);
    return *this;
}

Ball& Ball::mul_assign(const Ball& o) {
    Scratch& s = scratch();
    // |ma|*rb + |mb|*ra + ra*rb, all rounded up.
    mpfr_abs(s.a, mid_, MPFR_RNDU);
    mpfr_mul(s.a, s.a, o.rad_, MPFR_RNDU);
    mpfr_abs(s.b, o.mid_, MPFR_RNDU);
    mpfr_mul(s.b, s.b, rad_, MPFR_RNDU);
    mpfr_add(s.a, s.a, s.b, MPFR_RNDU);
    mpfr_mul(s.c, rad_, o.rad_, MPFR_RNDU);
    mpfr_add(s.a, s.a, s.c, MPFR_RNDU);

    int t = mpfr_mul(mid_, mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, s.a, MPFR_RNDU);
    absorb_rounding(t);
    return *this;
}

Ball& Ball::add_assign_mpz(const Integer& v) {
    int t = mpfr_add_z(mid_, mid_, v.get_mpz_t(), MPFR_RNDN);
    absorb_rounding(t);
    return *this;
}

Ball& Ball::sub_assign_mpz(const Integer& v) {
    int t = mpfr_sub_z(mid_, mid_, v.get_mpz_t(), MPFR_RNDN);
    absorb_rounding(t);
    return *this;
}

Ball& Ball::mul_assign_ui(unsigned long v) {
    int t = mpfr_mul_ui(mid_, mid_, v, MPFR_RNDN);
    mpfr_mul_ui(rad_, rad_, v, MPFR_RNDU);
    absorb_rounding(t);
    return *this;
}

Ball& Ball::div_assign_ui(unsigned long v) {
    if (v == 0) throw ArgumentError("division by zero");
    int t = mpfr_div_ui(mid_, mid_, v, MPFR_RNDN);
    mpfr_div_ui(rad_, rad_, v, MPFR_RNDU);
    // div_ui of the radius rounds up, so only the midpoint rounding is left.
    absorb_rounding(t);
    return *this;
}

Ball Ball::recip() const {
    if (contains_zero()) throw DomainError("reciprocal of an enclosure containing zero");
    Ball r(prec());
    int t = mpfr_ui_div(r.mid_, 1, mid_, MPFR_RNDN);

    // |1/x - 1/m| <= r / (|m| * (|m| - r)); lower-bound the denominator.
    Scratch& s = scratch();
    mpfr_abs(s.a, mid_, MPFR_RNDD);
    mpfr_sub(s.b, s.a, rad_, MPFR_RNDD);
    mpfr_mul(s.a, s.a, s.b, MPFR_RNDD);
    mpfr_div(s.c, rad_, s.a, MPFR_RNDU);
    mpfr_set(r.rad_, s.c, MPFR_RNDU);
    r.absorb_rounding(t);
    return r;
}

void Ball::add_error(mpfr_srcptr r) { mpfr_add(rad_, rad_, r, MPFR_RNDU); }

Ball operator+(const Ball& a, const Ball& b) {
    if (a.prec() >= b.prec()) {
        Ball r(a);
        return std::move(r.add_assign(b));
    }
    Ball r(b);
    return std::move(r.add_assign(a));
}

Ball operator-(const Ball& a, const Ball& b) {
    if (a.prec() >= b.prec()) {
        Ball r(a);
        return std::move(r.sub_assign(b));
    }
    Ball r = b;
    r.neg_assign();
    return std::move(r.add_assign(a));
}

Ball operator*(const Ball& a, const Ball& b) {
    if (a.prec() >= b.prec()) {
        Ball r(a);
        return std::move(r.mul_assign(b));
    }
    Ball r(b);
    return std::move(r.mul_assign(a));
}

Ball Ball::operator-() const {
    Ball r(*this);
    r.neg_assign();
    return r;
}

std::string Ball::str(std::size_t digits) const {
    char* m = nullptr;
    char* r = nullptr;
    mpfr_asprintf(&m, "%.*Rg", static_cast<int>(digits), mid_);
    mpfr_asprintf(&r, "%.3Rg", rad_);
    std::string out = std::string(m) + " +/- " + r;
    mpfr_free_str(m);
    mpfr_free_str(r);
    return out;
}

Ball ball_pow(const Ball& b, unsigned long n) {
    if (n == 0) {
        Ball one(b.prec());
        mpfr_set_ui(const_cast<mpfr_ptr>(one.mid()), 1, MPFR_RNDN);
        return one;
    }
    Ball result(b);
    // Collect the leading bit implicitly: square-and-multiply from the top.
    int top = 63;
    while (top > 0 && !((n >> top) & 1UL)) --top;
    for (int i = top - 1; i >= 0; --i) {
        result.mul_assign(result);
        if ((n >> i) & 1UL) result.mul_assign(b);
    }
    return result;
}

Ball ball_exp(const Ball& x) {
    const mpfr_prec_t work = x.prec() + 64;

    // Reduce by the integer part: e^x = e^n * e^t with t = x - n in [0,1).
    if (!mpfr_number_p(x.mid())) throw DomainError("exp of a non-finite enclosure");
    if (mpfr_cmp_ui(x.mid(), 1UL << 24) >= 0 || mpfr_cmp_si(x.mid(), -(1L << 24)) <= 0)
        throw DomainError("exp argument too large");

    mpfr_t fl;
    mpfr_init2(fl, 64);
    mpfr_floor(fl, x.mid());
    long n = mpfr_get_si(fl, MPFR_RNDN);
    mpfr_clear(fl);

    Ball t(work);
    mpfr_set(const_cast<mpfr_ptr>(t.mid()), x.mid(), MPFR_RNDN);
    mpfr_set(const_cast<mpfr_ptr>(t.rad()), x.rad(), MPFR_RNDU);
    if (n != 0) {
        Integer ni(n);
        t.sub_assign_mpz(ni);
    }

    // sup |t| for the tail bound, in low-precision MPFR so the bound never
    // underflows at high working precisions.
    mpfr_t sup, bound, tail, target;
    mpfr_init2(sup, 32);
    mpfr_init2(bound, 32);
    mpfr_init2(tail, 32);
    mpfr_init2(target, 32);
    mpfr_abs(sup, t.mid(), MPFR_RNDU);
    mpfr_add(sup, sup, t.rad(), MPFR_RNDU);
    mpfr_set_ui_2exp(target, 1, -static_cast<mpfr_exp_t>(work + 8), MPFR_RNDN);
    if (mpfr_cmp_ui(sup, 2) >= 0) {
        mpfr_clears(sup, bound, tail, target, nullptr);
        throw DomainError("exp reduction failed: wide enclosure");
    }

    auto series = [&](const Ball& arg) {
        Ball acc = Ball::from_integer(1, work);
        Ball term = Ball::from_integer(1, work);
        mpfr_set_ui(bound, 1, MPFR_RNDU);  // bound for sup^k / k!
        for (unsigned long k = 1;; ++k) {
            term.mul_assign(arg);
            term.div_assign_ui(k);
            acc.add_assign(term);
            mpfr_mul(bound, bound, sup, MPFR_RNDU);
            mpfr_div_ui(bound, bound, k, MPFR_RNDU);
            // Tail after k terms <= 2 * bound * sup/(k+1) once k+1 > 2*sup.
            if (k > 4) {
                mpfr_mul(tail, bound, sup, MPFR_RNDU);
                mpfr_div_ui(tail, tail, k + 1, MPFR_RNDU);
                mpfr_mul_2ui(tail, tail, 1, MPFR_RNDU);
                if (mpfr_cmp(tail, target) <= 0) {
                    acc.add_error(tail);
                    break;
                }
            }
            if (k > 4000000) throw PrecisionExhausted("exp series did not converge");
        }
        return acc;
    };

    Ball sum = series(t);
    Ball result = std::move(sum);
    if (n != 0) {
        // e itself by the same series at t = 1 (sup = 1 still applies).
        mpfr_set_ui(sup, 1, MPFR_RNDU);
        Ball e1 = series(Ball::from_integer(1, work));
        Ball en = ball_pow(e1, static_cast<unsigned long>(n < 0 ? -n : n));
        if (n < 0) en = en.recip();
        result.mul_assign(en);
    }
    mpfr_clears(sup, bound, tail, target, nullptr);
    return result;
}

std::pair<Ball, Integer> split_mod_one(const Ball& x) {
    if (!mpfr_number_p(x.mid())) throw AmbiguousBoundary("non-finite enclosure");

    Integer fl;
    mpfr_get_z(fl.get_mpz_t(), x.mid(), MPFR_RNDD);

    Ball frac(x);
    frac.sub_assign_mpz(fl);

    // Certify floor(lower) == floor(upper) == fl: frac - rad >= 0 and
    // frac + rad < 1, using directed rounding so a borderline case reads
    // as ambiguous rather than the other way round.
    if (!frac.is_exact()) {
        if (mpfr_cmp(frac.mid(), frac.rad()) < 0)
            throw AmbiguousBoundary("enclosure straddles an integer from below");
        mpfr_t room;
        mpfr_init2(room, Ball::kRadiusPrec);
        mpfr_ui_sub(room, 1, frac.mid(), MPFR_RNDD);
        bool bad = mpfr_cmp(frac.rad(), room) >= 0;
        mpfr_clear(room);
        if (bad) throw AmbiguousBoundary("enclosure straddles an integer from above");
    }
    return {std::move(frac), std::move(fl)};
}

UnitValue frac_mod_one(const Ball& x, int target_bits) {
    auto [frac, fl] = split_mod_one(x);
    mpfr_t target;
    mpfr_init2(target, 16);
    mpfr_set_ui_2exp(target, 1, -target_bits, MPFR_RNDN);
    bool wide = mpfr_cmp(frac.rad(), target) > 0;
    mpfr_clear(target);
    if (wide) throw AmbiguousBoundary("enclosure wider than the certification target");

    UnitValue out;
    out.value = mpfr_get_d(frac.mid(), MPFR_RNDN);
    if (out.value >= 1.0) out.value = std::nextafter(1.0, 0.0);
    if (out.value < 0.0) out.value = 0.0;
    out.error = mpfr_get_d(frac.rad(), MPFR_RNDU);
    return out;
}

}  // namespace modone
