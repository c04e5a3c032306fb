#pragma once

#include <optional>
#include <string>

#include <mpfr.h>

#include "cyclebound/pq_system.hpp"

namespace cyclebound {

/// Closed interval [lower, upper] of binary floating-point endpoints. Every
/// operation rounds the lower endpoint down and the upper endpoint up, so the
/// true real value of an expression is always enclosed.
class Interval {
 public:
  explicit Interval(mpfr_prec_t precision);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(Interval other) noexcept;
  ~Interval();

  static Interval exact(const BigInt& v, mpfr_prec_t precision);
  static Interval exact(std::uint64_t v, mpfr_prec_t precision);
  static Interval ratio(const BigInt& num, const BigInt& den, mpfr_prec_t precision);
  static Interval ln2(mpfr_prec_t precision);

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lower() const { return lo_; }
  mpfr_srcptr upper() const { return hi_; }
  // Raw endpoint access for callers that fill an interval directly; they are
  // responsible for rounding lower down and upper up.
  mpfr_ptr lower_mut() { return lo_; }
  mpfr_ptr upper_mut() { return hi_; }

  bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
  bool positive() const { return mpfr_sgn(lo_) > 0; }

  bool certainly_less(const Interval& other) const { return mpfr_less_p(hi_, other.lo_) != 0; }
  bool certainly_greater(const Interval& other) const { return other.certainly_less(*this); }

  /// floor(x) when both endpoints share it.
  std::optional<BigInt> common_floor() const;

  /// Absolute width hi - lo, rounded up.
  double width() const;
  double approx() const;

  /// Fixed-point decimal rendering of the midpoint (never scientific).
  std::string midpoint_string(int fraction_digits) const;
  /// "[lo, hi]" in fixed-point decimal.
  std::string bounds_string(int fraction_digits) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);

  friend Interval log2(const Interval& x);
  friend Interval log(const Interval& x);
  friend Interval log1p(const Interval& x);
  friend Interval exp2(const Interval& x);

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

/// Fixed-point rendering of a single MPFR value.
std::string fixed_string(mpfr_srcptr v, int fraction_digits);

}  // namespace cyclebound
