#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crowdsim/engine.hpp"
#include "crowdsim/report.hpp"
#include "crowdsim/scenario.hpp"

namespace crowdsim {

struct RunResult {
  Report report;
  std::optional<Trace> trace;
  std::vector<Task> final_tasks;
};

/// Materialize, drive to the end, tally. Identical (scenario, seed) pairs
/// give identical results.
RunResult run(const Scenario& scenario, std::uint64_t seed, const RunOptions& options = {});

}  // namespace crowdsim
