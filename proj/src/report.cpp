#include "cyclebound/report.hpp"

#include <iomanip>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cyclebound/bounds.hpp"
#include "cyclebound/catalog.hpp"
#include "cyclebound/cycles.hpp"
#include "cyclebound/dynamics.hpp"
#include "cyclebound/error.hpp"

namespace cyclebound {

using ojson = nlohmann::ordered_json;

namespace {

// Reference figures for the canonical (3,1) input, as originally reported.
constexpr const char* kReferenceAlpha = "11387806137299329586";
constexpr const char* kReferenceBeta = "6586818670";
// Mantissa width of the floating-point run that produced those figures.
constexpr unsigned kReferenceMantissaBits = 96;

template <typename T>
std::string join(const std::vector<T>& xs, const char* sep = ", ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << sep;
    if constexpr (std::is_same_v<T, BigInt>) os << to_decimal(xs[i]); else os << xs[i];
  }
  return os.str();
}

ojson big_array(const std::vector<BigInt>& xs) {
  ojson a = ojson::array();
  for (const auto& x : xs) a.push_back(to_decimal(x));
  return a;
}

ojson system_json(const PqSystem& s) { return ojson{{"p", s.p}, {"q", s.q}}; }

struct CycleRow {
  const CycleRecord* record;
  BoundCheck check;
  std::string bound_value;
  bool sandwich_ok;
};

CycleRow summarize(const CycleRecord& rec) {
  CycleRow row{&rec, exact_bound_check(rec), {}, check_sandwich(rec).pass()};
  const BoundValue b = rec.loop_class == LoopClass::Beta ? beta_bound(rec.m(), rec.system)
                                                         : alpha_bound(rec.m(), rec.system);
  row.bound_value = b.value.midpoint_string(6);
  return row;
}

std::string check_word(const BoundCheck& c) {
  if (!c.pass) return "fail";
  return c.equality ? "pass-equality" : "pass";
}

std::string abbreviate(const std::vector<BigInt>& xs, std::size_t keep = 6) {
  if (xs.size() <= keep) return "[" + join(xs) + "]";
  std::vector<BigInt> head(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(keep));
  return "[" + join(head) + ", ... (" + std::to_string(xs.size()) + " elements)]";
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "json" || s == "structured") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw Error(ErrorKind::InvalidArgument, "unknown format '" + s + "' (text | json | csv)");
}

void validate(const RunConfig& c) {
  validate(c.system);
  if (c.precision_bits == 0 || c.chunk_size == 0 || c.limit == 0 || c.max_steps == 0 || c.max_bits == 0) {
    throw Error(ErrorKind::InvalidArgument, "numeric options must be positive");
  }
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::Parse: return kExitUsage;
    case ErrorKind::Io: return kExitIo;
    case ErrorKind::NotACycle: return kExitCheckFailed;
    default: return kExitComputation;
  }
}

BigInt canonical_a_min() { return BigInt(19) * (BigInt(1) << 58) - 1; }

CommandOutput cmd_trajectory(const BigInt& start, const RunConfig& config) {
  validate(config);
  TrajectoryOptions opts;
  opts.max_steps = config.max_steps;
  opts.max_bits = config.max_bits;
  opts.stop_on_cycle = true;
  const Trajectory t = t_trajectory(start, config.system, opts);
  const auto values = t.odd_values();
  const auto ks = t.k_sequence();
  const bool fixed = !values.empty() && t_step(values.back(), config.system).output == values.back();

  CommandOutput out;
  std::ostringstream os;
  switch (config.format) {
    case OutputFormat::Json: {
      ojson j;
      j["system"] = system_json(config.system);
      j["start"] = to_decimal(start);
      j["odd_values"] = big_array(values);
      j["k_sequence"] = ks;
      j["s_partial"] = t.s_partial;
      j["closed"] = t.closed_cycle;
      j["fixed_point"] = fixed;
      os << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv:
      os << "r,a,k,s\n";
      for (std::size_t i = 0; i < values.size(); ++i) {
        os << i + 1 << ',' << to_decimal(values[i]) << ',' << ks[i] << ',' << t.s_partial[i] << '\n';
      }
      break;
    case OutputFormat::Text:
      os << config.system.label() << " odd trajectory of " << to_decimal(start) << '\n';
      os << std::setw(6) << "r" << "  " << std::setw(24) << "a_{r+1}" << std::setw(6) << "k_r" << std::setw(10)
         << "S_r" << '\n';
      for (std::size_t i = 0; i < values.size(); ++i) {
        os << std::setw(6) << i + 1 << "  " << std::setw(24) << to_decimal(values[i]) << std::setw(6) << ks[i]
           << std::setw(10) << t.s_partial[i] << '\n';
      }
      os << "odd values: " << join(values) << '\n';
      os << "k: " << join(ks) << '\n';
      os << "S: " << join(t.s_partial) << '\n';
      if (fixed) os << "reached fixed point " << to_decimal(values.back()) << '\n';
      else if (t.closed_cycle) os << "closed a cycle at " << to_decimal(values.back()) << '\n';
      else os << "stopped after " << values.size() << " steps without closing a cycle\n";
      break;
  }
  out.body = os.str();
  return out;
}

CommandOutput cmd_min_m(SearchClass search, const BigInt& a_min, const RunConfig& config) {
  validate(config);
  MinMResult r;
  if (search == SearchClass::Alpha) {
    r = min_m_alpha(a_min, config.system, std::max(config.precision_bits, kDefaultAlphaBits));
  } else {
    ScanConfig sc;
    sc.precision_bits = config.precision_bits;
    sc.chunk_size = config.chunk_size;
    sc.workers = config.workers;
    std::ostringstream progress_log;
    if (config.progress_interval != 0) {
      auto next = std::make_shared<std::uint64_t>(config.progress_interval);
      const auto interval = config.progress_interval;
      sc.progress = [next, interval](std::uint64_t m) {
        if (m >= *next) {
          std::cerr << m << " has been checked...\n";
          *next = (m / interval + 1) * interval;
        }
      };
    }
    r = min_m_beta_scan(a_min, config.system, sc);
  }

  const bool canonical = config.system == PqSystem::collatz() && a_min == canonical_a_min();
  std::optional<FloatReplay> replay;
  if (canonical) replay = replay_rhs_threshold(a_min, config.system, kReferenceMantissaBits);
  const std::string reference = search == SearchClass::Alpha ? kReferenceAlpha : kReferenceBeta;

  CommandOutput out;
  std::ostringstream os;
  if (config.format == OutputFormat::Json) {
    ojson j;
    j["search"] = to_string(r.search);
    j["system"] = system_json(r.system);
    j["a_min"] = to_decimal(r.a_min_input);
    j["minimal_m"] = to_decimal(r.minimal_m);
    j["precision_bits"] = r.precision_bits;
    j["threshold"] = r.threshold;
    if (search == SearchClass::Beta) {
      j["chunk_size"] = r.chunk_size;
      j["workers"] = r.workers;
    }
    ojson ties = ojson::array();
    for (const auto& t : r.near_ties) {
      ties.push_back({{"m", to_decimal(t.m)}, {"accepted", t.accepted}, {"decided_at_bits", t.decided_at_bits},
                      {"exact", t.exact}, {"margin", t.margin}});
    }
    j["near_ties"] = ties;
    if (canonical) {
      j["reference"] = {{"value", reference}, {"matches", to_decimal(r.minimal_m) == reference}};
      if (search == SearchClass::Alpha) {
        j["reference"]["float_replay"] = {{"mantissa_bits", replay->mantissa_bits},
                                          {"threshold", replay->threshold},
                                          {"threshold_floor", to_decimal(replay->threshold_floor)}};
      }
    }
    os << j.dump(2) << '\n';
  } else if (config.format == OutputFormat::Csv) {
    os << "search,p,q,a_min,minimal_m,precision_bits,near_ties\n";
    os << to_string(r.search) << ',' << r.system.p << ',' << r.system.q << ',' << to_decimal(r.a_min_input) << ','
       << to_decimal(r.minimal_m) << ',' << r.precision_bits << ',' << r.near_ties.size() << '\n';
  } else {
    os << to_string(r.search) << "-loop minimal m for " << r.system.label() << ", a_min = " << to_decimal(a_min)
       << '\n';
    os << "  threshold log2/log(1+q/(p a_min)) in " << r.threshold << '\n';
    os << "  minimal m: " << to_decimal(r.minimal_m) << '\n';
    os << "  precision: " << r.precision_bits << " bits";
    if (search == SearchClass::Beta) os << ", chunk " << r.chunk_size << ", workers " << r.workers;
    os << '\n';
    if (r.near_ties.empty()) {
      os << "  near ties: none\n";
    } else {
      os << "  near ties (" << r.near_ties.size() << "):\n";
      for (const auto& t : r.near_ties) {
        os << "    m=" << to_decimal(t.m) << (t.accepted ? " accepted" : " rejected") << ", "
           << (t.exact ? std::string("exact integer comparison") : std::to_string(t.decided_at_bits) + " bits")
           << ", margin " << t.margin << '\n';
      }
    }
    if (canonical) {
      const bool match = to_decimal(r.minimal_m) == reference;
      os << "  reference figure for this input: " << reference << (match ? " (matches)" : " (differs)") << '\n';
      if (search == SearchClass::Alpha) {
        os << "  float replay at " << replay->mantissa_bits << "-bit mantissa: threshold " << replay->threshold
           << ", floor " << to_decimal(replay->threshold_floor) << '\n';
        os << "  the reference figure is the floor of the float-replay threshold; the certified least integer\n"
              "  above the exact threshold is reported as minimal m\n";
      } else {
        os << "  note: this exceeds the previously known lower bounds on nontrivial cycle length\n"
              "  (Sinisalo 2003); that comparison is literature context, not recomputed here\n";
      }
    }
  }
  out.body = os.str();
  return out;
}

CommandOutput cmd_cycles(const RunConfig& config) {
  validate(config);
  const unsigned workers = config.workers == 0 ? 1 : config.workers;
  const CycleSweep sweep =
      enumerate_cycles(config.system, config.limit, CycleLimits{config.max_steps, config.max_bits}, workers);

  CommandOutput out;
  std::vector<CycleRow> rows;
  for (const auto& c : sweep.cycles) rows.push_back(summarize(c));
  bool all_pass = true;
  for (const auto& r : rows) all_pass = all_pass && r.check.pass && r.sandwich_ok;

  if (config.out) {
    try {
      const std::size_t n = merge_into_catalog(*config.out, sweep.cycles);
      out.diagnostics += "catalog " + config.out->string() + ": " + std::to_string(n) + " records\n";
    } catch (const Error& e) {
      out.diagnostics += std::string("error: ") + e.what() + "\n";
      out.exit_code = kExitIo;
    }
  }

  std::ostringstream os;
  switch (config.format) {
    case OutputFormat::Csv:
      os << "p,q,m,s_m,a_min,loop_class,bound_value,check\n";
      for (const auto& r : rows) {
        os << r.record->system.p << ',' << r.record->system.q << ',' << r.record->m() << ',' << r.record->s_m << ','
           << to_decimal(r.record->a_min) << ',' << to_string(r.record->loop_class) << ',' << r.bound_value << ','
           << check_word(r.check) << '\n';
      }
      break;
    case OutputFormat::Json: {
      ojson j;
      j["system"] = system_json(config.system);
      j["limit"] = config.limit;
      ojson cycles = ojson::array();
      for (const auto& r : rows) {
        cycles.push_back({{"elements", big_array(r.record->elements)},
                          {"k_sequence", r.record->k_sequence},
                          {"m", r.record->m()},
                          {"s_m", r.record->s_m},
                          {"a_min", to_decimal(r.record->a_min)},
                          {"loop_class", to_string(r.record->loop_class)},
                          {"bound_value", r.bound_value},
                          {"check", check_word(r.check)},
                          {"transcript", r.check.transcript},
                          {"sandwich", r.sandwich_ok}});
      }
      j["cycles"] = cycles;
      ojson suspects = ojson::array();
      for (const auto& s : sweep.suspects) {
        suspects.push_back({{"start", to_decimal(s.start)}, {"outcome", to_string(s.outcome)},
                            {"steps", s.steps}, {"last_bits", s.last_bits}});
      }
      j["suspects"] = suspects;
      os << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::Text:
      os << config.system.label() << " cycles from odd starts <= " << config.limit << ": " << rows.size() << '\n';
      os << std::setw(6) << "m" << std::setw(8) << "S_m" << std::setw(14) << "a_min" << std::setw(20) << "class"
         << std::setw(22) << "bound" << std::setw(15) << "check" << "  elements\n";
      for (const auto& r : rows) {
        os << std::setw(6) << r.record->m() << std::setw(8) << r.record->s_m << std::setw(14)
           << to_decimal(r.record->a_min) << std::setw(20) << to_string(r.record->loop_class) << std::setw(22)
           << r.bound_value << std::setw(15) << check_word(r.check) << "  " << abbreviate(r.record->elements)
           << '\n';
      }
      if (!sweep.suspects.empty()) {
        os << "budget exhausted (divergence suspected) for " << sweep.suspects.size() << " starts";
        os << "; first: " << to_decimal(sweep.suspects.front().start) << " ("
           << to_string(sweep.suspects.front().outcome) << ", " << sweep.suspects.front().last_bits << " bits)\n";
      }
      for (const auto& r : rows) {
        if (r.record->loop_class == LoopClass::BoundaryEquality || r.check.equality) {
          os << "note: " << abbreviate(r.record->elements)
             << " meets its bound with equality (one-element cycle), outside the strict alpha/beta split\n";
        }
      }
      break;
  }
  out.body = os.str();
  if (!all_pass && out.exit_code == kExitOk) out.exit_code = kExitCheckFailed;
  return out;
}

CommandOutput cmd_bounds(std::uint64_t m_from, std::uint64_t m_to, const RunConfig& config) {
  validate(config);
  if (m_from == 0 || m_to < m_from) throw Error(ErrorKind::InvalidArgument, "need 1 <= m-from <= m-to");
  CommandOutput out;
  std::ostringstream os;
  const bool has_frac = config.system.p >= 3;
  if (config.format == OutputFormat::Csv) os << "m,frac_m_log2p,alpha,beta\n";
  if (config.format == OutputFormat::Text) {
    os << "bounds for " << config.system.label() << " at " << config.precision_bits << " bits\n";
    os << std::setw(8) << "m" << std::setw(28) << "frac(m log2 p)" << std::setw(32) << "alpha_m" << std::setw(32)
       << "beta_m" << '\n';
  }
  ojson rows = ojson::array();
  for (std::uint64_t m = m_from; m <= m_to; ++m) {
    const std::string fr =
        has_frac ? frac_m_log2p(m, config.system.p, config.precision_bits).midpoint_string(24) : "0";
    const std::string a = alpha_bound(m, config.system, config.precision_bits).value.midpoint_string(20);
    const std::string b = beta_bound(m, config.system, config.precision_bits).value.midpoint_string(20);
    switch (config.format) {
      case OutputFormat::Csv: os << m << ',' << fr << ',' << a << ',' << b << '\n'; break;
      case OutputFormat::Json: rows.push_back({{"m", m}, {"frac_m_log2p", fr}, {"alpha", a}, {"beta", b}}); break;
      case OutputFormat::Text:
        os << std::setw(8) << m << std::setw(28) << fr << std::setw(32) << a << std::setw(32) << b << '\n';
        break;
    }
    if (m == m_to) break;
  }
  if (config.format == OutputFormat::Json) {
    ojson j{{"system", system_json(config.system)}, {"precision_bits", config.precision_bits}, {"rows", rows}};
    os << j.dump(2) << '\n';
  }
  out.body = os.str();
  return out;
}

CommandOutput cmd_verify(const VerifyOptions& options, const RunConfig& config) {
  validate(config);
  CommandOutput out;
  std::ostringstream os;
  std::size_t failures = 0;

  std::mt19937_64 rng(options.seed);
  const std::uint64_t half = std::max<std::uint64_t>(options.sample_below / 2, 1);
  std::uniform_int_distribution<std::uint64_t> pick(0, half - 1);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < options.samples; ++i) {
    const BigInt start = to_big(2 * pick(rng) + 1);
    const Trajectory t = t_trajectory(start, config.system, options.prefix_steps);
    for (std::size_t m = 1; m <= t.length(); ++m) {
      const IdentityCheck c = verify_linear_form(t, m);
      ++checked;
      if (!c.pass) {
        ++failures;
        os << "FAIL linear form: start " << to_decimal(start) << ", m=" << m << ", residual "
           << to_decimal(c.residual) << '\n';
      }
    }
  }
  os << "linear form: " << checked << " prefix checks over " << options.samples << " starts under "
     << config.system.label() << '\n';

  if (options.catalog) {
    std::vector<CatalogEntry> entries;
    try {
      entries = read_catalog(*options.catalog);
    } catch (const Error& e) {
      out.diagnostics = std::string("error: ") + e.what() + "\n";
      out.exit_code = exit_code_for(e.kind());
      out.body = os.str();
      return out;
    }
    if (entries.empty()) out.diagnostics += "warning: catalog " + options.catalog->string() + " is empty\n";
    for (const auto& e : entries) {
      const CycleRecord& rec = e.record;
      const std::string where = options.catalog->string() + ":" + std::to_string(e.line_number);
      const IdentityCheck recorded = product_identity_residual(rec.elements, rec.s_m, rec.system);
      try {
        const IdentityCheck c = verify_product_identity(rec.elements, rec.system);
        const CycleRecord canon = make_cycle_record(rec.elements, rec.system);
        if (!c.pass || !recorded.pass || canon != rec) {
          ++failures;
          os << "FAIL " << where << ": product identity residual " << to_decimal(recorded.residual)
             << (canon != rec ? " (record differs from its recomputation)" : "") << '\n';
          continue;
        }
        const BoundCheck b = exact_bound_check(rec);
        if (!b.pass || !check_sandwich(rec).pass()) {
          ++failures;
          os << "FAIL " << where << ": " << b.transcript << '\n';
        }
      } catch (const Error& err) {
        ++failures;
        os << "FAIL " << where << ": " << err.what() << "; product identity residual with recorded S_m="
           << rec.s_m << ": " << to_decimal(recorded.residual) << '\n';
      }
    }
    os << "catalog: " << entries.size() << " records checked\n";
  }
  os << (failures == 0 ? "all identities hold\n" : std::to_string(failures) + " failures\n");
  out.body = os.str();
  out.exit_code = failures == 0 ? kExitOk : kExitCheckFailed;
  return out;
}

}  // namespace cyclebound
