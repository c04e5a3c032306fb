#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace cyclebound {

using BigInt = mpz_class;

/// The generalized map parameters: odd x goes to p*x + q. Both must be
/// positive and odd so that p*x + q is even for every odd x.
struct PqSystem {
  std::uint64_t p = 3;
  std::uint64_t q = 1;

  /// Validating constructor; throws Error(InvalidArgument).
  static PqSystem make(std::uint64_t p, std::uint64_t q);

  static constexpr PqSystem collatz() { return PqSystem{3, 1}; }

  std::string label() const;  // "3x+1"

  friend bool operator==(const PqSystem&, const PqSystem&) = default;
  friend auto operator<=>(const PqSystem&, const PqSystem&) = default;
};

void validate(const PqSystem& system);

// gmpxx has no uint64_t overloads on every platform; go through unsigned long
// explicitly.
inline BigInt to_big(std::uint64_t v) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return BigInt(static_cast<unsigned long>(v));
}

BigInt parse_big(const std::string& decimal);
std::string to_decimal(const BigInt& v);

}  // namespace cyclebound
