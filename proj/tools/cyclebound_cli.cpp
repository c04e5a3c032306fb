#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cyclebound/error.hpp"
#include "cyclebound/report.hpp"

using namespace cyclebound;

namespace {

int emit(const CommandOutput& out) {
  std::cout << out.body << std::flush;
  std::cerr << out.diagnostics;
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cyclebound: cycle bounds for the accelerated px+q map"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "text";
  std::string out_path;
  std::uint64_t p = 3, q = 1;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", p, "multiplier (odd, positive)")->capture_default_str();
    sub->add_option("--q", q, "increment (odd, positive)")->capture_default_str();
    sub->add_option("--precision-bits", config.precision_bits, "fixed-point / interval precision")
        ->capture_default_str();
    sub->add_option("--chunk-size", config.chunk_size, "m values per scan chunk")->capture_default_str();
    sub->add_option("--workers", config.workers, "worker threads (0: hardware)")->capture_default_str();
    sub->add_option("--limit", config.limit, "largest start value for sweeps")->capture_default_str();
    sub->add_option("--max-steps", config.max_steps, "step budget per trajectory")->capture_default_str();
    sub->add_option("--max-bits", config.max_bits, "value budget in bits")->capture_default_str();
    sub->add_option("--format", format, "text | json | csv")->capture_default_str();
    sub->add_option("--out", out_path, "catalog file to write or merge into");
    sub->add_option("--progress", config.progress_interval, "report every N values of m (0: off)");
  };

  std::string start_text;
  auto* trajectory = app.add_subcommand("trajectory", "odd-only trajectory with valuations");
  trajectory->add_option("start", start_text, "odd starting value")->required();
  common(trajectory);

  auto* cycles = app.add_subcommand("cycles", "enumerate cycles and check them against the bounds");
  common(cycles);

  std::uint64_t m_from = 1, m_to = 10;
  auto* bounds = app.add_subcommand("bounds", "alpha_m and beta_m over a range of m");
  bounds->add_option("--m", m_from, "first m")->capture_default_str();
  bounds->add_option("--m-to", m_to, "last m (defaults to --m)");
  common(bounds);

  std::string search = "alpha";
  std::string a_min_text;
  auto* min_m = app.add_subcommand("min-m", "least number of odd elements a loop must have");
  min_m->add_option("class", search, "alpha | beta")->required()->check(CLI::IsMember({"alpha", "beta"}));
  min_m->add_option("--a-min", a_min_text, "least element bound (default 19*2^58-1)");
  common(min_m);

  VerifyOptions verify_opts;
  std::string catalog_path;
  auto* verify = app.add_subcommand("verify", "run the exact identity suite");
  verify->add_option("--catalog", catalog_path, "catalog file to verify");
  verify->add_option("--samples", verify_opts.samples, "random trajectories")->capture_default_str();
  verify->add_option("--prefix-steps", verify_opts.prefix_steps, "steps per trajectory")->capture_default_str();
  verify->add_option("--seed", verify_opts.seed, "sampling seed")->capture_default_str();
  common(verify);

  CLI11_PARSE(app, argc, argv);

  try {
    config.system = PqSystem::make(p, q);
    config.format = parse_format(format);
    if (!out_path.empty()) config.out = out_path;
    if (config.format != OutputFormat::Text && !app.got_subcommand(min_m)) config.progress_interval = 0;

    if (app.got_subcommand(trajectory)) return emit(cmd_trajectory(parse_big(start_text), config));
    if (app.got_subcommand(cycles)) return emit(cmd_cycles(config));
    if (app.got_subcommand(bounds)) {
      if (bounds->count("--m-to") == 0) m_to = m_from;
      return emit(cmd_bounds(m_from, m_to, config));
    }
    if (app.got_subcommand(min_m)) {
      const BigInt a = a_min_text.empty() ? canonical_a_min() : parse_big(a_min_text);
      return emit(cmd_min_m(search == "alpha" ? SearchClass::Alpha : SearchClass::Beta, a, config));
    }
    if (app.got_subcommand(verify)) {
      if (!catalog_path.empty()) verify_opts.catalog = catalog_path;
      return emit(cmd_verify(verify_opts, config));
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}
