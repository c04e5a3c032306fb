#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "cyclebound/error.hpp"
#include "cyclebound/min_m.hpp"
#include "cyclebound/pq_system.hpp"

namespace cyclebound {

enum class OutputFormat { Text, Json, Csv };
OutputFormat parse_format(const std::string& s);

struct RunConfig {
  PqSystem system;
  unsigned precision_bits = 128;
  std::uint64_t chunk_size = std::uint64_t{1} << 24;
  unsigned workers = 0;
  std::uint64_t limit = 1000;
  std::size_t max_steps = 100000;
  std::size_t max_bits = 512;
  std::optional<std::filesystem::path> out;
  OutputFormat format = OutputFormat::Text;
  std::uint64_t progress_interval = 0;  // 0: silent
};

/// Throws Error(InvalidArgument) for any non-positive or even field.
void validate(const RunConfig& config);

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitComputation = 3;
inline constexpr int kExitIo = 4;

int exit_code_for(ErrorKind kind);

struct CommandOutput {
  std::string body;         // stdout
  std::string diagnostics;  // stderr
  int exit_code = kExitOk;
};

CommandOutput cmd_trajectory(const BigInt& start, const RunConfig& config);
CommandOutput cmd_min_m(SearchClass search, const BigInt& a_min, const RunConfig& config);
CommandOutput cmd_cycles(const RunConfig& config);
CommandOutput cmd_bounds(std::uint64_t m_from, std::uint64_t m_to, const RunConfig& config);

struct VerifyOptions {
  std::optional<std::filesystem::path> catalog;
  std::size_t samples = 1000;
  std::size_t prefix_steps = 20;
  std::uint64_t sample_below = 1000000;
  std::uint64_t seed = 20100101;
};
CommandOutput cmd_verify(const VerifyOptions& options, const RunConfig& config);

/// The canonical search input 19 * 2^58 - 1 (one below the bound of the
/// computationally verified convergence range).
BigInt canonical_a_min();

}  // namespace cyclebound
