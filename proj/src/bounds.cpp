#include "cyclebound/bounds.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "cyclebound/error.hpp"

namespace cyclebound {

namespace {

void check_bits(unsigned bits) {
  if (bits == 0 || bits > kMaxPrecisionBits) {
    throw Error(ErrorKind::PrecisionUnachievable,
                "precision of " + std::to_string(bits) + " bits is outside [1, " +
                    std::to_string(kMaxPrecisionBits) + "]");
  }
}

// Extra interval bits beyond the requested output; the mantissa enclosure
// loses roughly one bit per squaring, so this must exceed the output width.
std::optional<BigInt> extract_log2_bits(std::uint64_t p, unsigned bits, unsigned guard) {
  const unsigned shift = static_cast<unsigned>(mpz_sizeinbase(to_big(p).get_mpz_t(), 2)) - 1;
  const unsigned work = bits + guard;
  BigInt lo = to_big(p);
  // lo = hi = p * 2^(work - shift), the mantissa in [1, 2) scaled by 2^work.
  mpz_mul_2exp(lo.get_mpz_t(), lo.get_mpz_t(), work - shift);
  BigInt hi = lo;
  BigInt two;
  mpz_setbit(two.get_mpz_t(), work + 1);

  BigInt out = 0;
  for (unsigned i = 0; i < bits; ++i) {
    lo *= lo;
    mpz_fdiv_q_2exp(lo.get_mpz_t(), lo.get_mpz_t(), work);
    hi *= hi;
    mpz_cdiv_q_2exp(hi.get_mpz_t(), hi.get_mpz_t(), work);
    const bool lo_high = lo >= two;
    const bool hi_high = hi >= two;
    if (lo_high != hi_high) return std::nullopt;
    mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), 1);
    if (lo_high) {
      out += 1;
      mpz_fdiv_q_2exp(lo.get_mpz_t(), lo.get_mpz_t(), 1);
      mpz_cdiv_q_2exp(hi.get_mpz_t(), hi.get_mpz_t(), 1);
    }
  }
  return out;
}

// Ladder of working precisions for a computation that asked for `bits`.
template <typename Fn>
auto escalate(unsigned bits, const char* what, Fn&& attempt) {
  check_bits(bits);
  for (unsigned prec = std::max(bits, 64u);; prec *= 2) {
    const unsigned capped = std::min(prec, kMaxPrecisionBits);
    try {
      if (auto r = attempt(capped)) return *r;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PrecisionUnachievable) throw;
    }
    if (capped == kMaxPrecisionBits) {
      throw Error(ErrorKind::EscalationExhausted,
                  std::string(what) + ": undecided at " + std::to_string(kMaxPrecisionBits) + " bits");
    }
  }
}

Interval log2_of(std::uint64_t p, mpfr_prec_t prec) { return log2(Interval::exact(p, prec)); }

}  // namespace

std::string FixedFraction::hex() const {
  std::string digits = numerator.get_str(16);
  const std::size_t width = (bits + 3) / 4;
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return "0x" + digits;
}

std::string FixedFraction::decimal(int digits) const {
  Interval e = enclosure();
  return fixed_string(e.lower(), digits);
}

Interval FixedFraction::enclosure() const {
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(bits + 64, 64);
  Interval out(prec);
  BigInt upper = numerator + to_big(error_ulps);
  mpfr_set_z_2exp(out.lower_mut(), numerator.get_mpz_t(), -static_cast<long>(bits), MPFR_RNDD);
  mpfr_set_z_2exp(out.upper_mut(), upper.get_mpz_t(), -static_cast<long>(bits), MPFR_RNDU);
  return out;
}

FixedFraction log2_frac(std::uint64_t p, unsigned bits) {
  if (p < 3 || p % 2 == 0) {
    throw Error(ErrorKind::InvalidArgument, "log2_frac needs an odd p >= 3 (got " + std::to_string(p) + ")");
  }
  if (bits < 64) throw Error(ErrorKind::InvalidArgument, "log2_frac needs at least 64 bits");
  if (bits > kMaxPrecisionBits) {
    throw Error(ErrorKind::PrecisionUnachievable,
                "log2_frac: " + std::to_string(bits) + " bits exceeds the maximum of " +
                    std::to_string(kMaxPrecisionBits));
  }
  for (unsigned guard = bits + 64; guard <= 8 * (bits + 64); guard *= 2) {
    if (auto n = extract_log2_bits(p, bits, guard)) return FixedFraction{*n, bits, 1};
  }
  throw Error(ErrorKind::PrecisionUnachievable, "log2_frac: digit extraction did not settle");
}

BigInt floor_m_log2p(std::uint64_t m, std::uint64_t p) {
  if (p == 1) return 0;
  // p^m has about m * log2 p bits; small enough to build outright.
  if (m <= (std::uint64_t{1} << 16)) {
    BigInt pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), p, m);
    return BigInt(static_cast<unsigned long>(mpz_sizeinbase(pm.get_mpz_t(), 2) - 1));
  }
  return escalate(128, "floor(m log2 p)", [&](unsigned prec) -> std::optional<BigInt> {
    const Interval v = Interval::exact(m, prec) * log2_of(p, prec);
    return v.common_floor();
  });
}

Interval frac_m_log2p(std::uint64_t m, std::uint64_t p, unsigned bits) {
  check_bits(bits);
  const BigInt n = floor_m_log2p(m, p);
  const unsigned prec = bits + 64;
  return Interval::exact(m, prec) * log2_of(p, prec) - Interval::exact(n, prec);
}

BoundValue alpha_bound(std::uint64_t m, const PqSystem& system, unsigned bits) {
  validate(system);
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "alpha_bound needs m >= 1");
  check_bits(bits);
  const unsigned prec = bits + 32;
  const Interval one = Interval::exact(std::uint64_t{1}, prec);
  const Interval denom = Interval::exact(system.p, prec) *
                         (exp2(one / Interval::exact(m, prec)) - one);
  return {Interval::exact(system.q, prec) / denom, bits};
}

BoundValue beta_bound(std::uint64_t m, const PqSystem& system, unsigned bits) {
  validate(system);
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "beta_bound needs m >= 1");
  return escalate(bits, "beta_bound", [&](unsigned prec) -> std::optional<BoundValue> {
    const unsigned work = prec + 32;
    const Interval one = Interval::exact(std::uint64_t{1}, work);
    const Interval gap = one - frac_m_log2p(m, system.p, work);
    if (!gap.positive()) return std::nullopt;
    const Interval denom = Interval::exact(system.p, work) *
                           (exp2(gap / Interval::exact(m, work)) - one);
    if (!denom.positive()) return std::nullopt;
    return BoundValue{Interval::exact(system.q, work) / denom, prec};
  });
}

BoundValue rhs_threshold(const BigInt& a_min, const PqSystem& system, unsigned bits) {
  validate(system);
  if (sgn(a_min) <= 0) throw Error(ErrorKind::InvalidArgument, "rhs_threshold needs a_min >= 1");
  check_bits(bits);
  const unsigned prec = bits + 32;
  const BigInt pa = to_big(system.p) * a_min;
  if (pa == to_big(system.q)) return {Interval::exact(std::uint64_t{1}, prec), bits};
  const Interval y = Interval::ratio(to_big(system.q), pa, prec);
  return {Interval::ln2(prec) / log1p(y), bits};
}

Interval sandwich_window(std::uint64_t m, const BigInt& a_min, const PqSystem& system, unsigned bits) {
  validate(system);
  check_bits(bits);
  const unsigned prec = bits + 32;
  const Interval mm = Interval::exact(m, prec);
  const Interval base = mm * log2_of(system.p, prec);
  const Interval y = Interval::ratio(to_big(system.q), to_big(system.p) * a_min, prec);
  const Interval widen = mm * (log1p(y) / Interval::ln2(prec));
  Interval out(prec);
  mpfr_set(out.lower_mut(), base.lower(), MPFR_RNDD);
  Interval top = base + widen;
  mpfr_set(out.upper_mut(), top.upper(), MPFR_RNDU);
  return out;
}

FloatReplay replay_rhs_threshold(const BigInt& a_min, const PqSystem& system, unsigned mantissa_bits) {
  validate(system);
  if (mantissa_bits < 2 || mantissa_bits > kMaxPrecisionBits) {
    throw Error(ErrorKind::InvalidArgument, "replay mantissa must be in [2, 4096] bits");
  }
  mpfr_t x, l2, r, t;
  mpfr_inits2(mantissa_bits, x, l2, r, t, static_cast<mpfr_ptr>(nullptr));
  const BigInt pa = to_big(system.p) * a_min;
  // 1 + q/(p a) is an exact rational until it is first converted to a float.
  const mpq_class base(pa + to_big(system.q), pa);
  mpfr_set_q(x, base.get_mpq_t(), MPFR_RNDN);
  mpfr_log(x, x, MPFR_RNDN);
  mpfr_const_log2(l2, MPFR_RNDN);
  mpfr_div(r, l2, x, MPFR_RNDN);

  FloatReplay out{mantissa_bits, fixed_string(r, 12), 0};
  mpfr_floor(t, r);
  mpfr_get_z(out.threshold_floor.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clears(x, l2, r, t, static_cast<mpfr_ptr>(nullptr));
  return out;
}

}  // namespace cyclebound
