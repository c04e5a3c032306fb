#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cyclebound/pq_system.hpp"

namespace cyclebound {

/// One application of the odd-only map: output * 2^k == p * input + q.
struct StepRecord {
  BigInt input;
  unsigned k = 0;
  BigInt output;
};

struct Trajectory {
  PqSystem system;
  BigInt start;
  std::vector<StepRecord> steps;
  // s_partial[r] is k_1 + ... + k_{r+1}.
  std::vector<std::uint64_t> s_partial;
  // 1-based step index at which the start value first reappeared, if it did.
  std::optional<std::size_t> returned_to_start_at;
  // Set when stop_on_cycle ended the trajectory.
  bool closed_cycle = false;

  std::size_t length() const { return steps.size(); }
  std::vector<BigInt> odd_values() const;
  std::vector<unsigned> k_sequence() const;
};

struct TrajectoryOptions {
  std::size_t max_steps = 1;
  bool stop_on_return = false;
  // Stop after the first output that repeats an earlier value (the start
  // included) or is a fixed point of T.
  bool stop_on_cycle = false;
  std::size_t max_bits = 0;  // 0: unbounded
};

/// Exact result of an integer identity check; residual is lhs - rhs.
struct IdentityCheck {
  bool pass = false;
  BigInt residual;
};

BigInt f_step(const BigInt& x, const PqSystem& system);

/// Exact 2-adic valuation of a positive integer.
unsigned two_adic_valuation(const BigInt& v);

StepRecord t_step(const BigInt& a, const PqSystem& system);

Trajectory t_trajectory(const BigInt& a, const PqSystem& system, const TrajectoryOptions& options);
inline Trajectory t_trajectory(const BigInt& a, const PqSystem& system, std::size_t max_steps) {
  return t_trajectory(a, system, TrajectoryOptions{max_steps});
}

/// c_m = p^{m-1} + p^{m-2} 2^{S_1} + ... + 2^{S_{m-1}}, with S taken from the
/// recorded valuations of the first m - 1 steps.
BigInt coefficient_cm(const Trajectory& trajectory, std::size_t m);

/// a_{m+1} * 2^{S_m} == p^m * a_1 + q * c_m.
IdentityCheck verify_linear_form(const Trajectory& trajectory, std::size_t m);

/// 2^{S_m} * prod(a_i) == prod(p * a_i + q) for a closed T-cycle. Throws
/// Error(NotACycle) if t_step does not chain the values into a loop.
IdentityCheck verify_product_identity(std::span<const BigInt> cycle_values, const PqSystem& system);

/// The same identity evaluated with a caller-supplied S_m and no chaining
/// check; used to produce residual transcripts for damaged catalog records.
IdentityCheck product_identity_residual(std::span<const BigInt> values, std::uint64_t s_m,
                                        const PqSystem& system);

}  // namespace cyclebound
