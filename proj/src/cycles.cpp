#include "cyclebound/cycles.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "cyclebound/dynamics.hpp"
#include "cyclebound/error.hpp"

namespace cyclebound {

namespace {

BigInt pow_big(const BigInt& base, std::uint64_t e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

BigInt shl(BigInt v, std::uint64_t bits) {
  mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
  return v;
}

std::string cmp_word(int c) { return c > 0 ? " > " : (c < 0 ? " < " : " = "); }

}  // namespace

const char* to_string(LoopClass c) {
  switch (c) {
    case LoopClass::Alpha: return "alpha";
    case LoopClass::Beta: return "beta";
    case LoopClass::BoundaryEquality: return "boundary-equality";
  }
  return "unknown";
}

LoopClass parse_loop_class(const std::string& s) {
  if (s == "alpha") return LoopClass::Alpha;
  if (s == "beta") return LoopClass::Beta;
  if (s == "boundary-equality") return LoopClass::BoundaryEquality;
  throw Error(ErrorKind::Parse, "unknown loop class '" + s + "'");
}

const char* to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Cycle: return "cycle";
    case SearchOutcome::StepBudgetExhausted: return "step-budget-exhausted";
    case SearchOutcome::ValueBudgetExhausted: return "value-budget-exhausted";
  }
  return "unknown";
}

bool catalog_less(const CycleRecord& a, const CycleRecord& b) {
  if (a.system != b.system) return a.system < b.system;
  if (a.a_min != b.a_min) return a.a_min < b.a_min;
  if (a.m() != b.m()) return a.m() < b.m();
  return a.elements < b.elements;
}

CycleRecord make_cycle_record(const std::vector<BigInt>& values, const PqSystem& system) {
  validate(system);
  if (values.empty()) throw Error(ErrorKind::NotACycle, "empty cycle");
  const auto min_it = std::min_element(values.begin(), values.end());
  CycleRecord rec;
  rec.system = system;
  rec.elements.reserve(values.size());
  rec.elements.insert(rec.elements.end(), min_it, values.end());
  rec.elements.insert(rec.elements.end(), values.begin(), min_it);
  for (std::size_t i = 0; i < rec.elements.size(); ++i) {
    const StepRecord step = t_step(rec.elements[i], system);
    const BigInt& next = rec.elements[(i + 1) % rec.elements.size()];
    if (step.output != next) {
      throw Error(ErrorKind::NotACycle, "T(" + to_decimal(rec.elements[i]) + ") = " +
                                            to_decimal(step.output) + ", not " + to_decimal(next));
    }
    rec.k_sequence.push_back(step.k);
    rec.s_m += step.k;
  }
  rec.a_min = rec.elements.front();
  rec.loop_class = classify_cycle(rec);
  return rec;
}

CycleSearchReport find_cycle_from(const BigInt& start, const PqSystem& system, const CycleLimits& limits) {
  validate(system);
  CycleSearchReport report;
  report.start = start;
  std::map<BigInt, std::size_t> seen;
  std::vector<BigInt> path;
  BigInt current = start;
  for (;;) {
    auto [it, fresh] = seen.emplace(current, path.size());
    if (!fresh) {
      std::vector<BigInt> loop(path.begin() + static_cast<std::ptrdiff_t>(it->second), path.end());
      report.cycle = make_cycle_record(loop, system);
      report.outcome = SearchOutcome::Cycle;
      return report;
    }
    path.push_back(current);
    report.last_bits = mpz_sizeinbase(current.get_mpz_t(), 2);
    if (report.steps >= limits.max_steps) {
      report.outcome = SearchOutcome::StepBudgetExhausted;
      return report;
    }
    if (limits.max_bits != 0 && report.last_bits > limits.max_bits) {
      report.outcome = SearchOutcome::ValueBudgetExhausted;
      return report;
    }
    current = t_step(current, system).output;
    ++report.steps;
  }
}

CycleSweep enumerate_cycles(const PqSystem& system, std::uint64_t start_limit, const CycleLimits& limits,
                            unsigned workers) {
  validate(system);
  if (start_limit == 0) throw Error(ErrorKind::InvalidArgument, "start limit must be at least 1");
  workers = std::max(1u, workers);

  // Single collector owning deduplication; identity is the canonical
  // element sequence.
  std::mutex collector;
  std::map<std::vector<BigInt>, CycleRecord> found;
  std::vector<CycleSearchReport> suspects;
  std::exception_ptr failure;

  auto work = [&](unsigned id) {
    std::map<std::vector<BigInt>, CycleRecord> local;
    std::vector<CycleSearchReport> local_suspects;
    try {
      for (std::uint64_t s = 1 + 2 * std::uint64_t{id}; s <= start_limit; s += 2 * std::uint64_t{workers}) {
        CycleSearchReport r = find_cycle_from(to_big(s), system, limits);
        if (r.cycle) {
          local.try_emplace(r.cycle->elements, std::move(*r.cycle));
        } else {
          local_suspects.push_back(std::move(r));
        }
      }
    } catch (...) {
      std::lock_guard lock(collector);
      if (!failure) failure = std::current_exception();
    }
    std::lock_guard lock(collector);
    for (auto& [key, rec] : local) found.try_emplace(key, std::move(rec));
    for (auto& r : local_suspects) suspects.push_back(std::move(r));
  };

  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(work, i);
  work(0);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  CycleSweep sweep;
  sweep.system = system;
  for (auto& [key, rec] : found) sweep.cycles.push_back(std::move(rec));
  std::sort(sweep.cycles.begin(), sweep.cycles.end(), catalog_less);
  std::sort(suspects.begin(), suspects.end(),
            [](const CycleSearchReport& a, const CycleSearchReport& b) { return a.start < b.start; });
  sweep.suspects = std::move(suspects);
  return sweep;
}

LoopClass classify(std::uint64_t m, const BigInt& a_min, const PqSystem& system) {
  const BigInt pa = to_big(system.p) * a_min;
  const int c = cmp(pow_big(pa + to_big(system.q), m), shl(pow_big(pa, m), 1));
  if (c > 0) return LoopClass::Alpha;
  if (c < 0) return LoopClass::Beta;
  return LoopClass::BoundaryEquality;
}

LoopClass classify_cycle(const CycleRecord& record) {
  return classify(record.m(), record.a_min, record.system);
}

BoundCheck exact_bound_check(const CycleRecord& record) {
  const auto& sys = record.system;
  const std::uint64_t m = record.m();
  const BigInt& a = record.a_min;
  const BigInt pa = to_big(sys.p) * a;
  const BigInt lhs = pow_big(pa + to_big(sys.q), m);

  BoundCheck out;
  out.loop_class = classify_cycle(record);
  BigInt rhs;
  std::string rhs_text;
  if (out.loop_class == LoopClass::Beta) {
    BigInt pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), sys.p, m);
    const std::uint64_t n = mpz_sizeinbase(pm.get_mpz_t(), 2) - 1;  // floor(m log2 p)
    rhs = shl(pow_big(a, m), n + 1);
    rhs_text = "2^" + std::to_string(n + 1) + "*" + to_decimal(a) + "^" + std::to_string(m);
  } else {
    rhs = shl(pow_big(pa, m), 1);
    rhs_text = "2*" + to_decimal(pa) + "^" + std::to_string(m);
  }
  const int c = cmp(lhs, rhs);
  out.equality = c == 0;
  out.pass = c > 0 || (c == 0 && record.degenerate());
  out.transcript = std::string(to_string(out.loop_class)) + ": " + to_decimal(pa + to_big(sys.q)) + "^" +
                   std::to_string(m) + " = " + to_decimal(lhs) + cmp_word(c) + rhs_text + " = " +
                   to_decimal(rhs);
  return out;
}

bool SandwichCheck::pass() const {
  return lower_strict && upper_holds && (!multi_element || upper_strict);
}

SandwichCheck check_sandwich(const CycleRecord& record) {
  const auto& sys = record.system;
  const std::uint64_t m = record.m();
  BigInt pm;
  mpz_ui_pow_ui(pm.get_mpz_t(), sys.p, m);
  const BigInt two_s = shl(BigInt(1), record.s_m);
  SandwichCheck out;
  out.multi_element = m > 1;
  out.lower_strict = pm < two_s;
  const int c = cmp(shl(pow_big(record.a_min, m), record.s_m),
                    pow_big(to_big(sys.p) * record.a_min + to_big(sys.q), m));
  out.upper_holds = c <= 0;
  out.upper_strict = c < 0;
  return out;
}

}  // namespace cyclebound
