#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "crowdsim/scenario.hpp"

namespace crowdsim::cli {

enum ExitCode : int { kOk = 0, kUsageError = 1, kRuntimeError = 2 };

struct SeedRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

/// Parses "LO..HI" (inclusive, LO <= HI). Throws UsageError otherwise.
SeedRange parse_seed_range(std::string_view text);

/// Reports for every seed in the range, rendered in ascending seed order.
/// `parallelism` only changes how many runs execute at once.
std::string sweep(const Scenario& scenario, SeedRange seeds, unsigned parallelism,
                  std::string_view format);

/// Entry point behind the `crowdsim` binary. Output goes to `out`, all
/// diagnostics to `err`.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crowdsim::cli
