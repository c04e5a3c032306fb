#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cyclebound/pq_system.hpp"

namespace cyclebound {

enum class SearchClass { Alpha, Beta };
const char* to_string(SearchClass c);

/// A candidate m whose fast-path comparison fell inside the guard band and
/// was settled by a slower certified evaluation.
struct NearTie {
  BigInt m;
  bool accepted = false;
  unsigned decided_at_bits = 0;  // 0 when settled by exact integer comparison
  bool exact = false;
  std::string margin;            // lhs(m) - rhs as fixed-point decimal

  friend bool operator==(const NearTie&, const NearTie&) = default;
};

struct MinMResult {
  BigInt minimal_m;
  SearchClass search = SearchClass::Alpha;
  PqSystem system;
  BigInt a_min_input;
  unsigned precision_bits = 0;
  std::string threshold;          // certified enclosure of log 2 / log(1 + q/(p a_min))
  std::vector<NearTie> near_ties;
  std::uint64_t chunk_size = 0;   // beta scan only
  unsigned workers = 0;           // beta scan only

  /// Fields that must not depend on how the work was scheduled.
  bool same_outcome(const MinMResult& other) const;
};

inline constexpr unsigned kDefaultAlphaBits = 192;

/// Least integer m with m > log 2 / log(1 + q/(p a_min)).
MinMResult min_m_alpha(const BigInt& a_min, const PqSystem& system, unsigned bits = kDefaultAlphaBits);

struct ScanConfig {
  unsigned precision_bits = 128;            // 64, 128, 192 or 256
  std::uint64_t chunk_size = std::uint64_t{1} << 24;
  unsigned workers = 0;                     // 0: one per hardware thread
  std::vector<unsigned> escalation_bits{256, 512};
  std::uint64_t max_m = 0;                  // 0: derived from the threshold
  // Called after each completed chunk with the chunk's last m; may be invoked
  // from worker threads but never concurrently.
  std::function<void(std::uint64_t)> progress;
};

/// Least m >= 2 with m / (1 - frac(m log2 p)) > log 2 / log(1 + q/(p a_min)).
///
/// The scan keeps d_m = 2^B - (m F mod 2^B), with F = frac(log2 p) truncated to
/// B bits, so that d_m / 2^B approximates 1 - frac(m log2 p) from above by at
/// most m ulps. The test becomes d_m < m * 2^B / rhs; each chunk of m values
/// starts from an exact product m0 * F, and candidates whose comparison falls
/// in the guard band are re-decided by decide_beta_condition.
MinMResult min_m_beta_scan(const BigInt& a_min, const PqSystem& system, const ScanConfig& config = {});

/// Certified decision of lhs(m) > rhs(a_min) for one m, walking the precision
/// ladder and falling back to the exact integer form
/// (p a + q)^m > 2^{floor(m log2 p) + 1} a^m when the intervals never separate.
NearTie decide_beta_condition(std::uint64_t m, const BigInt& a_min, const PqSystem& system,
                              std::span<const unsigned> ladder);

}  // namespace cyclebound
