#pragma once

#include <cstdint>
#include <string>

#include "cyclebound/interval.hpp"
#include "cyclebound/pq_system.hpp"

namespace cyclebound {

inline constexpr unsigned kMaxPrecisionBits = 4096;
inline constexpr unsigned kDefaultBoundBits = 128;

/// A value in [0, 1) stored as numerator / 2^bits. The true value lies in
/// [numerator, numerator + error_ulps] / 2^bits.
struct FixedFraction {
  BigInt numerator;
  unsigned bits = 0;
  std::uint64_t error_ulps = 0;

  std::string hex() const;                   // "0x95c0..." padded to bits/4 digits
  std::string decimal(int digits) const;     // "0.5849..."
  Interval enclosure() const;
};

/// frac(log2 p) to `bits` fractional bits by binary digit extraction: the
/// normalized mantissa p / 2^floor(log2 p) is squared repeatedly and each
/// overflow past 2 yields a one bit. Both endpoints of the mantissa are carried
/// so every emitted bit is certified. Error bound is one ulp (truncation).
FixedFraction log2_frac(std::uint64_t p, unsigned bits);

/// floor(m * log2 p), exactly; uses bitlength(p^m) - 1 when p^m is cheap and
/// a certified interval otherwise.
BigInt floor_m_log2p(std::uint64_t m, std::uint64_t p);

/// Certified enclosure of frac(m * log2 p).
Interval frac_m_log2p(std::uint64_t m, std::uint64_t p, unsigned bits);

/// A certified bound value; `precision_bits` is the working precision that
/// produced it, which may exceed the request after escalation.
struct BoundValue {
  Interval value;
  unsigned precision_bits;
};

/// q / (p * (2^{1/m} - 1))
BoundValue alpha_bound(std::uint64_t m, const PqSystem& system, unsigned bits = kDefaultBoundBits);

/// q / (p * (2^{(1 - frac(m log2 p))/m} - 1)); escalates precision when the
/// enclosure of 1 - frac(m log2 p) cannot be separated from zero.
BoundValue beta_bound(std::uint64_t m, const PqSystem& system, unsigned bits = kDefaultBoundBits);

/// log 2 / log(1 + q / (p * a_min)); the point interval 1 when q == p * a_min.
BoundValue rhs_threshold(const BigInt& a_min, const PqSystem& system, unsigned bits = kDefaultBoundBits);

/// [m log2 p, m log2 p + m log2(1 + q/(p a_min))]: the window that S_m of any
/// cycle with m odd elements and least element a_min must fall in.
Interval sandwich_window(std::uint64_t m, const BigInt& a_min, const PqSystem& system,
                         unsigned bits = kDefaultBoundBits);

/// The threshold as a plain floating-point program would produce it: every
/// intermediate (q/(p a), 1 + that, both logarithms, the quotient) rounded to
/// nearest at `mantissa_bits`. Not certified; used to reconcile published
/// figures that were produced this way.
struct FloatReplay {
  unsigned mantissa_bits;
  std::string threshold;   // decimal rendering of the rounded quotient
  BigInt threshold_floor;  // floor of the rounded quotient
};
FloatReplay replay_rhs_threshold(const BigInt& a_min, const PqSystem& system, unsigned mantissa_bits);

}  // namespace cyclebound
