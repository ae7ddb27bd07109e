#pragma once

#include <cstdint>
#include <iosfwd>

namespace slope::cli {

struct CliConfig {
  double t = 5.0;
  int precision = 3;
  double alpha = 0.001;
  double min_confidence = 0.0;
  bool deterministic_only = false;
  std::size_t threads = 1;
  std::uint64_t seed = 0;
};

inline constexpr int kExitDecided = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUndecided = 2;

/// Entry point of the `slope` tool. Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slope::cli
