#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>

#include <gmpxx.h>

namespace cyclebound {

/// Fixed-width unsigned integer of Limbs 64-bit words (little-endian limbs),
/// used as the fixed-point register of the fractional-part scan. Arithmetic is
/// modulo 2^(64*Limbs) unless the name says otherwise.
template <std::size_t Limbs>
struct WideUint {
  static_assert(Limbs >= 1 && Limbs <= 8);
  static constexpr std::size_t kBits = 64 * Limbs;

  std::array<std::uint64_t, Limbs> limb{};

  static constexpr WideUint max() {
    WideUint r;
    r.limb.fill(~std::uint64_t{0});
    return r;
  }

  static constexpr WideUint from_u64(std::uint64_t v) {
    WideUint r;
    r.limb[0] = v;
    return r;
  }

  /// Low kBits bits of a nonnegative integer.
  static WideUint from_big(const mpz_class& v) {
    WideUint r;
    mpz_class t = v;
    for (std::size_t i = 0; i < Limbs; ++i) {
      r.limb[i] = mpz_getlimbn(t.get_mpz_t(), 0);
      mpz_tdiv_q_2exp(t.get_mpz_t(), t.get_mpz_t(), 64);
    }
    return r;
  }

  mpz_class to_big() const {
    mpz_class r = 0;
    for (std::size_t i = Limbs; i-- > 0;) {
      mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), 64);
      r += mpz_class(static_cast<unsigned long>(limb[i]));
    }
    return r;
  }

  constexpr unsigned __int128 as_u128() const
    requires(Limbs == 2)
  {
    return (static_cast<unsigned __int128>(limb[1]) << 64) | limb[0];
  }

  constexpr void set_u128(unsigned __int128 v)
    requires(Limbs == 2)
  {
    limb[0] = static_cast<std::uint64_t>(v);
    limb[1] = static_cast<std::uint64_t>(v >> 64);
  }

  bool is_zero() const {
    for (auto w : limb)
      if (w != 0) return false;
    return true;
  }

  friend constexpr bool operator==(const WideUint&, const WideUint&) = default;

  friend constexpr std::strong_ordering operator<=>(const WideUint& a, const WideUint& b) {
    if constexpr (Limbs == 2) return a.as_u128() <=> b.as_u128();
    for (std::size_t i = Limbs; i-- > 0;) {
      if (a.limb[i] != b.limb[i]) return a.limb[i] <=> b.limb[i];
    }
    return std::strong_ordering::equal;
  }

  friend constexpr bool operator<(const WideUint& a, const WideUint& b) {
    if constexpr (Limbs == 2) {
      return a.as_u128() < b.as_u128();
    } else {
      return (a <=> b) < 0;
    }
  }

  /// this += b (mod 2^kBits); returns the carry out.
  constexpr bool add_in_place(const WideUint& b) {
    if constexpr (Limbs == 2) {
      const unsigned __int128 a = as_u128();
      const unsigned __int128 r = a + b.as_u128();
      set_u128(r);
      return r < a;
    }
    unsigned __int128 carry = 0;
    for (std::size_t i = 0; i < Limbs; ++i) {
      carry += static_cast<unsigned __int128>(limb[i]) + b.limb[i];
      limb[i] = static_cast<std::uint64_t>(carry);
      carry >>= 64;
    }
    return carry != 0;
  }

  /// Adds b and clamps to max() on overflow. A clamped value is only a lower
  /// bound for the true sum.
  constexpr void add_saturating(const WideUint& b) {
    if (*this == max()) return;
    if (add_in_place(b)) *this = max();
  }

  friend constexpr WideUint operator+(WideUint a, const WideUint& b) {
    a.add_in_place(b);
    return a;
  }

  friend constexpr WideUint operator-(const WideUint& a, const WideUint& b) {
    WideUint r;
    if constexpr (Limbs == 2) {
      r.set_u128(a.as_u128() - b.as_u128());
      return r;
    }
    std::uint64_t borrow = 0;
    for (std::size_t i = 0; i < Limbs; ++i) {
      const unsigned __int128 d =
          static_cast<unsigned __int128>(a.limb[i]) - b.limb[i] - borrow;
      r.limb[i] = static_cast<std::uint64_t>(d);
      borrow = static_cast<std::uint64_t>(d >> 64) & 1;
    }
    return r;
  }

  /// 2^kBits - this, i.e. two's-complement negation.
  constexpr WideUint negated() const { return WideUint{} - *this; }

  /// this * m; the high word that falls off the top is returned through
  /// overflow so callers can choose between wrapping and saturating.
  constexpr WideUint mul_u64(std::uint64_t m, std::uint64_t& overflow) const {
    WideUint r;
    unsigned __int128 carry = 0;
    for (std::size_t i = 0; i < Limbs; ++i) {
      carry += static_cast<unsigned __int128>(limb[i]) * m;
      r.limb[i] = static_cast<std::uint64_t>(carry);
      carry >>= 64;
    }
    overflow = static_cast<std::uint64_t>(carry);
    return r;
  }

  constexpr WideUint mul_wrapping(std::uint64_t m) const {
    std::uint64_t ignored = 0;
    return mul_u64(m, ignored);
  }

  constexpr WideUint mul_saturating(std::uint64_t m) const {
    std::uint64_t overflow = 0;
    WideUint r = mul_u64(m, overflow);
    return overflow != 0 ? max() : r;
  }
};

}  // namespace cyclebound
