// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "modone/rational.hpp"

namespace modone {

/// A fractional-part value in [0,1) stored as a double, together with the
/// certified enclosure radius it was reduced at. The double itself carries
/// up to half an ulp of additional representation rounding on top of
/// `error`.
struct UnitValue {
    double value = 0.0;
    double error = 0.0;
};

/// Midpoint-radius enclosure of a real number.
///
/// The midpoint is an MPFR value at the ball's working precision; the radius
/// is a low-precision MPFR value kept as an upper bound (all radius
/// arithmetic rounds up, all midpoint rounding errors are absorbed into the
/// radius). Every operation is outward-rounded, so the true result of the
/// exact computation always lies in [mid - rad, mid + rad].
class Ball {
  public:
    static constexpr mpfr_prec_t kRadiusPrec = 30;

    explicit Ball(mpfr_prec_t prec = 64);  // exact zero
    Ball(const Ball& o);
    Ball(Ball&& o) noexcept;
    Ball& operator=(const Ball& o);
    Ball& operator=(Ball&& o) noexcept;
    ~Ball();

    static Ball from_rational(const Rational& q, mpfr_prec_t prec);
    static Ball from_integer(long v, mpfr_prec_t prec = 64);
    static Ball from_mpz(const Integer& v, mpfr_prec_t prec);
    /// Enclosure of sqrt(d).
    static Ball sqrt_ui(unsigned long d, mpfr_prec_t prec);
    /// Copy of `o` carried at a different working precision.
    static Ball at_prec(const Ball& o, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return mpfr_get_prec(mid_); }
    bool is_exact() const { return mpfr_zero_p(rad_); }
    mpfr_srcptr mid() const { return mid_; }
    mpfr_srcptr rad() const { return rad_; }
    double mid_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }
    /// Upper bound of the radius as a double (rounded up).
    double rad_double() const { return mpfr_get_d(rad_, MPFR_RNDU); }

    /// Certified lower/upper bound written into `out` (directed rounding).
    void lower(mpfr_ptr out) const;
    void upper(mpfr_ptr out) const;
    bool contains(const Rational& q) const;
    bool contains_zero() const;
    /// Sign of the certified lower bound (-1, 0, +1).
    int sign_lower() const;

    /// Drops trailing zero limbs of an exact midpoint; no-op when inexact.
    /// Cheap multiplications against wide operands rely on this.
    void shrink_exact();

    Ball& neg_assign();
    Ball& add_assign(const Ball& o);
    Ball& sub_assign(const Ball& o);
    Ball& mul_assign(const Ball& o);
    Ball& add_assign_mpz(const Integer& v);
    Ball& sub_assign_mpz(const Integer& v);
    Ball& mul_assign_ui(unsigned long v);
    Ball& div_assign_ui(unsigned long v);
    /// 1/x; requires the enclosure to exclude zero.
    Ball recip() const;

    /// Inflates the radius by `r` (rounded up).
    void add_error(mpfr_srcptr r);

    friend Ball operator+(const Ball& a, const Ball& b);
    friend Ball operator-(const Ball& a, const Ball& b);
    friend Ball operator*(const Ball& a, const Ball& b);
    Ball operator-() const;

    std::string str(std::size_t digits = 20) const;

  private:
    mpfr_t mid_;
    mpfr_t rad_;

    void absorb_rounding(int ternary);
};

/// Enclosure of b^n by binary exponentiation with outward rounding.
/// n = 0 yields the exact ball [1,1].
Ball ball_pow(const Ball& b, unsigned long n);

/// Enclosure of e^x: argument reduction by the integer part, then the
/// Taylor series with a geometric tail bound folded into the radius.
Ball ball_exp(const Ball& x);

/// Splits x into (fractional ball in [0,1), integer floor). Throws
/// AmbiguousBoundary when the enclosure straddles an integer so the floor
/// cannot be decided.
std::pair<Ball, Integer> split_mod_one(const Ball& x);

/// Fractional part of x as a UnitValue, certified to 2^-target_bits.
/// Throws AmbiguousBoundary if the floor is undecidable or the enclosure is
/// wider than the target; the caller must refine upstream precision.
UnitValue frac_mod_one(const Ball& x, int target_bits);

}  // namespace modone
