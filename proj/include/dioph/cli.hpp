#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dioph/rational.hpp"
#include "dioph/real.hpp"

namespace dioph::cli {

/// Malformed command line. `help` marks an explicit --help request.
struct UsageError : std::runtime_error {
  UsageError(const std::string& what, bool help = false) : std::runtime_error(what), help(help) {}
  bool help;
};

inline constexpr std::uint64_t kDefaultPrimeLimit = 10'000'000;

/// Parsed invocation. Unset optionals fall back to per-subcommand defaults
/// when the command runs; psi and policy hold canonical text.
struct Command {
  std::string name;
  unsigned threads = 0;
  unsigned precision_bits = kDefaultPrecisionBits;
  std::uint64_t prime_limit = kDefaultPrimeLimit;
  std::string out;
  bool timing = false;

  std::optional<std::uint64_t> m, n, M, N, n_min, n_max, k_max, cap, pair_cap, scan_limit, every;
  std::optional<Rational> eps;
  std::optional<std::string> psi;
  std::optional<std::string> policy;

  friend bool operator==(const Command&, const Command&) = default;
};

const std::vector<std::string>& subcommands();

/// Throws UsageError on unknown subcommands or flags and malformed values.
Command parse(const std::vector<std::string>& args);

/// Argument vector that parses back to the same Command.
std::vector<std::string> to_args(const Command& cmd);

std::string usage();

/// Runs the command. CSV goes to `out` and the JSON summary to `err` unless
/// cmd.out names a file, in which case both go to files (<out> and <out>.json).
/// Returns 0 on success and 1 when a hard invariant fails or output cannot be written.
int run(const Command& cmd, std::ostream& out, std::ostream& err);

/// Full program: parse, run, map errors onto exit codes 0, 1 and 2.
int main_entry(int argc, const char* const* argv);

}  // namespace dioph::cli
