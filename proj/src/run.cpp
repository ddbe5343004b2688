#include "crowdsim/run.hpp"

namespace crowdsim {

RunResult run(const Scenario& scenario, std::uint64_t seed, const RunOptions& options) {
  SimState state = materialize(scenario, seed, options.collect_trace);
  run_to_end(state, options);
  return RunResult{tally(state), std::move(state.trace), state.it.pool.tasks()};
}

}  // namespace crowdsim
