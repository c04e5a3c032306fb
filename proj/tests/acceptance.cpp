// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Usage: acceptance [criterion-name ...]   (no names: run all)

#include <algorithm>
#include <chrono>
#include <optional>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "cyclebound/bounds.hpp"
#include "cyclebound/cycles.hpp"
#include "cyclebound/dynamics.hpp"
#include "cyclebound/min_m.hpp"
#include "cyclebound/report.hpp"
#include "oracle.hpp"

using namespace cyclebound;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  std::string statement;
  std::function<Outcome()> run;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::string v = std::to_string(s);
  return v.substr(0, v.find('.') + 3) + "s";
}

std::vector<BigInt> big(std::initializer_list<long> xs) { return std::vector<BigInt>(xs.begin(), xs.end()); }

struct Fixture {
  std::vector<BigInt> elements;
  PqSystem system;
};

std::vector<Fixture> fixture_cycles() {
  return {{big({1}), {3, 1}},          {big({5}), {3, 5}},          {big({19, 31, 49}), {3, 5}},
          {big({23, 37, 29}), {3, 5}}, {big({1, 3}), {5, 1}},       {big({13, 33, 83}), {5, 1}},
          {big({17, 43, 27}), {5, 1}}};
}

Outcome alpha_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  const MinMResult r = min_m_alpha(canonical_a_min(), PqSystem{3, 1});
  const double t = seconds_since(t0);
  const std::string got = to_decimal(r.minimal_m);
  const FloatReplay replay = replay_rhs_threshold(canonical_a_min(), PqSystem{3, 1}, 96);
  const bool pass = got == "11387806137299329586" && t < 1.0;
  return {pass, "certified minimal m = " + got + " (threshold " + r.threshold + "), expected 11387806137299329586, " +
                    fmt_seconds(t) + "; 96-bit float replay of the threshold floors to " +
                    to_decimal(replay.threshold_floor)};
}

Outcome beta_reproduction() {
  // CI-scale surrogate first: must equal the independent per-m oracle scan.
  const BigInt small((BigInt(1) << 20) - 1);
  auto t0 = std::chrono::steady_clock::now();
  const MinMResult s = min_m_beta_scan(small, PqSystem{3, 1});
  const double ts = seconds_since(t0);
  const std::uint64_t oracle_m = oracle::beta_min_brute(oracle::Int((1 << 20) - 1), 3, 1);
  const bool surrogate = s.minimal_m == BigInt(static_cast<unsigned long>(oracle_m)) && ts < 10.0;

  t0 = std::chrono::steady_clock::now();
  const MinMResult r = min_m_beta_scan(canonical_a_min(), PqSystem{3, 1});
  const double t = seconds_since(t0);
  const bool full = to_decimal(r.minimal_m) == "6586818670" && r.precision_bits == 128 && t <= 900.0;
  return {surrogate && full, "a_min=2^20-1: " + to_decimal(s.minimal_m) + " vs oracle " + std::to_string(oracle_m) +
                                 " in " + fmt_seconds(ts) + "; a_min=19*2^58-1: " + to_decimal(r.minimal_m) + " in " +
                                 fmt_seconds(t) + " (" + std::to_string(r.workers) + " workers, " +
                                 std::to_string(r.near_ties.size()) + " near ties)"};
}

Outcome trace_fidelity() {
  const Trajectory t7 = t_trajectory(7, PqSystem{3, 1}, 5);
  const Trajectory t15 = t_trajectory(15, PqSystem{3, 1}, 5);
  const bool ok = t7.odd_values() == big({11, 17, 13, 5, 1}) && t7.k_sequence() == std::vector<unsigned>{1, 1, 2, 3, 4} &&
                  t15.odd_values() == big({23, 35, 53, 5, 1});
  return {ok, "7 -> 11,17,13,5,1 with k 1,1,2,3,4; 15 -> 23,35,53,5,1"};
}

Outcome identity_suite() {
  std::mt19937_64 rng(1);
  std::size_t checks = 0, failures = 0;
  for (const PqSystem& sys : {PqSystem{3, 1}, PqSystem{3, 5}, PqSystem{5, 1}}) {
    for (int i = 0; i < 1000; ++i) {
      const BigInt start = to_big(2 * (rng() % 500000) + 1);
      const Trajectory t = t_trajectory(start, sys, 20);
      for (std::size_t m = 1; m <= 20; ++m) {
        ++checks;
        if (!verify_linear_form(t, m).pass) ++failures;
      }
    }
  }
  std::size_t cycles_ok = 0;
  for (const auto& f : fixture_cycles()) {
    if (verify_product_identity(f.elements, f.system).pass) ++cycles_ok;
  }
  return {failures == 0 && cycles_ok == fixture_cycles().size(),
          std::to_string(checks) + " linear-form checks, " + std::to_string(failures) + " failures; product identity " +
              std::to_string(cycles_ok) + "/" + std::to_string(fixture_cycles().size()) + " fixture cycles"};
}

Outcome bound_validation() {
  std::size_t total = 0, passed = 0, alpha = 0, beta = 0, boundary = 0, equality = 0;
  for (auto [sys, limit] : {std::pair{PqSystem{3, 5}, 10000ULL}, std::pair{PqSystem{5, 1}, 1000ULL}}) {
    for (const auto& c : enumerate_cycles(sys, limit).cycles) {
      ++total;
      const BoundCheck b = exact_bound_check(c);
      if (b.pass) ++passed;
      if (b.equality) ++equality;
      switch (c.loop_class) {
        case LoopClass::Alpha: ++alpha; break;
        case LoopClass::Beta: ++beta; break;
        case LoopClass::BoundaryEquality: ++boundary; break;
      }
    }
  }
  return {total > 0 && passed == total,
          std::to_string(passed) + "/" + std::to_string(total) + " cycles pass the exact bound check (" +
              std::to_string(beta) + " beta, " + std::to_string(alpha) + " alpha, " + std::to_string(boundary) +
              " boundary-equality class; " + std::to_string(equality) + " met with equality)"};
}

Outcome sandwich() {
  std::size_t ok = 0;
  for (const auto& f : fixture_cycles()) {
    if (check_sandwich(make_cycle_record(f.elements, f.system)).pass()) ++ok;
  }
  return {ok == fixture_cycles().size(), std::to_string(ok) + "/" + std::to_string(fixture_cycles().size()) +
                                             " fixture cycles satisfy p^m < 2^S_m <= (p + q/a_min)^m"};
}

Outcome determinism() {
  std::string detail;
  bool all = true;
  for (const BigInt& a : std::vector<BigInt>{BigInt((BigInt(1) << 30) - 1), BigInt((BigInt(1) << 40) - 1)}) {
    std::optional<MinMResult> base;
    for (unsigned w : {1u, 2u, 8u}) {
      for (std::uint64_t chunk : {std::uint64_t{1} << 16, std::uint64_t{1} << 22}) {
        ScanConfig c;
        c.workers = w;
        c.chunk_size = chunk;
        MinMResult r = min_m_beta_scan(a, PqSystem{3, 1}, c);
        if (!base) base = r;
        all = all && r.same_outcome(*base);
      }
    }
    detail += (detail.empty() ? "" : ", ") + std::string("a_min=") + to_decimal(a) + " -> " +
              to_decimal(base->minimal_m);
  }
  return {all, detail + " identical for workers {1,2,8} x chunks {2^16, 2^22}"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"alpha-reproduction", "min_m_alpha(19*2^58-1, (3,1)) == 11387806137299329586 in < 1 s", alpha_reproduction},
      {"beta-reproduction", "min_m_beta_scan(19*2^58-1, (3,1)) == 6586818670 in <= 15 min; 2^20-1 surrogate == oracle in < 10 s",
       beta_reproduction},
      {"trace-fidelity", "trajectories of 7 and 15 under (3,1)", trace_fidelity},
      {"identity-suite", "linear form over 1000 random starts x 3 systems x 20 prefixes; product identity on fixtures",
       identity_suite},
      {"bound-validation", "(3,5) sweep to 10^4 and (5,1) sweep to 10^3 pass exact_bound_check", bound_validation},
      {"sandwich", "p^m < 2^S_m <= (p + q/a_min)^m on fixture cycles, strict right for m > 1", sandwich},
      {"determinism", "beta scan identical across worker counts 1, 2, 8 and two chunk sizes", determinism},
  };

  std::vector<std::string> wanted(argv + 1, argv + argc);
  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.name) == wanted.end()) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.name << " -- " << c.statement << "\n       " << o.detail
              << std::endl;
    if (!o.pass) ++failed;
  }
  if (ran == 0) {
    std::cerr << "no such criterion\n";
    return 2;
  }
  std::cout << (ran - failed) << "/" << ran << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
