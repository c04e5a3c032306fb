#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclebound/pq_system.hpp"

namespace cyclebound {

enum class LoopClass { Alpha, Beta, BoundaryEquality };
const char* to_string(LoopClass c);
LoopClass parse_loop_class(const std::string& s);

/// A T-map cycle rotated to start at its least element.
struct CycleRecord {
  PqSystem system;
  std::vector<BigInt> elements;
  std::vector<unsigned> k_sequence;
  std::uint64_t s_m = 0;
  BigInt a_min;
  LoopClass loop_class = LoopClass::Beta;

  std::size_t m() const { return elements.size(); }
  bool degenerate() const { return elements.size() == 1; }

  friend bool operator==(const CycleRecord&, const CycleRecord&) = default;
};

/// Deterministic catalog order: (a_min, m, elements).
bool catalog_less(const CycleRecord& a, const CycleRecord& b);

struct CycleLimits {
  std::size_t max_steps = 100000;
  std::size_t max_bits = 512;
};

enum class SearchOutcome { Cycle, StepBudgetExhausted, ValueBudgetExhausted };
const char* to_string(SearchOutcome o);

struct CycleSearchReport {
  BigInt start;
  SearchOutcome outcome = SearchOutcome::Cycle;
  std::optional<CycleRecord> cycle;
  std::size_t steps = 0;
  std::size_t last_bits = 0;
};

/// Builds the canonical record for a closed chain of odd values (any
/// rotation). Throws Error(NotACycle) if the values do not close under T.
CycleRecord make_cycle_record(const std::vector<BigInt>& values, const PqSystem& system);

CycleSearchReport find_cycle_from(const BigInt& start, const PqSystem& system, const CycleLimits& limits = {});

struct CycleSweep {
  PqSystem system;
  std::vector<CycleRecord> cycles;           // sorted by catalog_less
  std::vector<CycleSearchReport> suspects;   // budget exhausted, sorted by start
};

CycleSweep enumerate_cycles(const PqSystem& system, std::uint64_t start_limit,
                            const CycleLimits& limits = {}, unsigned workers = 1);

/// Exact three-way comparison of (p a_min + q)^m against 2 (p a_min)^m.
LoopClass classify_cycle(const CycleRecord& record);
LoopClass classify(std::uint64_t m, const BigInt& a_min, const PqSystem& system);

struct BoundCheck {
  bool pass = false;
  bool equality = false;
  LoopClass loop_class = LoopClass::Beta;
  std::string transcript;
};

/// a_min < alpha_m(p,q) for Alpha loops and a_min < beta_m(p,q) otherwise,
/// in cleared-denominator integer form. Equality passes only for one-element
/// cycles.
BoundCheck exact_bound_check(const CycleRecord& record);

struct SandwichCheck {
  bool lower_strict = false;    // p^m < 2^{S_m}
  bool upper_holds = false;     // 2^{S_m} a^m <= (p a + q)^m
  bool upper_strict = false;
  bool pass() const;            // strict upper required for multi-element cycles
  bool multi_element = false;
};

SandwichCheck check_sandwich(const CycleRecord& record);

}  // namespace cyclebound
