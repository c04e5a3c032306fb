#include "cyclebound/interval.hpp"

#include <algorithm>
#include <utility>

#include "cyclebound/error.hpp"

namespace cyclebound {

namespace {

mpfr_prec_t joint(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

// Minimum and maximum of the four endpoint combinations under directed
// rounding; used for multiplication and division.
template <typename Op>
Interval corners(const Interval& a, const Interval& b, Op op) {
  Interval out(joint(a, b));
  mpfr_t t;
  mpfr_init2(t, out.precision());
  mpfr_srcptr xs[2] = {a.lower(), a.upper()};
  mpfr_srcptr ys[2] = {b.lower(), b.upper()};
  bool first = true;
  mpfr_t lo, hi;
  mpfr_init2(lo, out.precision());
  mpfr_init2(hi, out.precision());
  for (auto x : xs) {
    for (auto y : ys) {
      op(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, lo)) mpfr_set(lo, t, MPFR_RNDD);
      op(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, hi)) mpfr_set(hi, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_set(out.lower_mut(), lo, MPFR_RNDD);
  mpfr_set(out.upper_mut(), hi, MPFR_RNDU);
  mpfr_clears(t, lo, hi, static_cast<mpfr_ptr>(nullptr));
  return out;
}

template <typename Fn>
Interval monotone(const Interval& x, Fn fn) {
  Interval out(x.precision());
  fn(out.lower_mut(), x.lower(), MPFR_RNDD);
  fn(out.upper_mut(), x.upper(), MPFR_RNDU);
  return out;
}

}  // namespace

Interval::Interval(mpfr_prec_t precision) {
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other.precision()) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(Interval other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::exact(const BigInt& v, mpfr_prec_t precision) {
  Interval out(precision);
  mpfr_set_z(out.lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(out.hi_, v.get_mpz_t(), MPFR_RNDU);
  return out;
}

Interval Interval::exact(std::uint64_t v, mpfr_prec_t precision) {
  return exact(to_big(v), precision);
}

Interval Interval::ratio(const BigInt& num, const BigInt& den, mpfr_prec_t precision) {
  if (sgn(den) == 0) throw Error(ErrorKind::InvalidArgument, "interval ratio with zero denominator");
  return exact(num, precision) / exact(den, precision);
}

Interval Interval::ln2(mpfr_prec_t precision) {
  Interval out(precision);
  mpfr_const_log2(out.lo_, MPFR_RNDD);
  mpfr_const_log2(out.hi_, MPFR_RNDU);
  return out;
}

std::optional<BigInt> Interval::common_floor() const {
  BigInt a, b;
  mpfr_t t;
  mpfr_init2(t, precision());
  mpfr_floor(t, lo_);
  mpfr_get_z(a.get_mpz_t(), t, MPFR_RNDN);
  mpfr_floor(t, hi_);
  mpfr_get_z(b.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  if (a != b) return std::nullopt;
  return a;
}

double Interval::width() const {
  mpfr_t t;
  mpfr_init2(t, precision());
  mpfr_sub(t, hi_, lo_, MPFR_RNDU);
  const double w = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return w;
}

double Interval::approx() const {
  mpfr_t t;
  mpfr_init2(t, precision() + 1);
  mpfr_add(t, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(t, t, 1, MPFR_RNDN);
  const double v = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return v;
}

std::string fixed_string(mpfr_srcptr v, int fraction_digits) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*RNf", fraction_digits, v);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string Interval::midpoint_string(int fraction_digits) const {
  mpfr_t t;
  mpfr_init2(t, precision() + 1);
  mpfr_add(t, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(t, t, 1, MPFR_RNDN);
  std::string s = fixed_string(t, fraction_digits);
  mpfr_clear(t);
  return s;
}

std::string Interval::bounds_string(int fraction_digits) const {
  return "[" + fixed_string(lo_, fraction_digits) + ", " + fixed_string(hi_, fraction_digits) + "]";
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval out(joint(a, b));
  mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval out(joint(a, b));
  mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return out;
}

Interval operator*(const Interval& a, const Interval& b) { return corners(a, b, mpfr_mul); }

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw Error(ErrorKind::PrecisionUnachievable, "interval division by an interval containing zero");
  return corners(a, b, mpfr_div);
}

Interval log2(const Interval& x) {
  if (!x.positive()) throw Error(ErrorKind::PrecisionUnachievable, "log2 of a non-positive interval");
  return monotone(x, mpfr_log2);
}

Interval log(const Interval& x) {
  if (!x.positive()) throw Error(ErrorKind::PrecisionUnachievable, "log of a non-positive interval");
  return monotone(x, mpfr_log);
}

Interval log1p(const Interval& x) {
  if (mpfr_cmp_si(x.lower(), -1) <= 0) throw Error(ErrorKind::PrecisionUnachievable, "log1p at or below -1");
  return monotone(x, mpfr_log1p);
}

Interval exp2(const Interval& x) { return monotone(x, mpfr_exp2); }

}  // namespace cyclebound
