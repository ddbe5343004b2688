#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "crowdsim/it_structure.hpp"
#include "crowdsim/model.hpp"
#include "crowdsim/policies.hpp"
#include "crowdsim/rng.hpp"

namespace crowdsim {

enum class EventKind { Participate, Assign, Submit, Flush, Complete };

const char* to_string(EventKind kind) noexcept;

struct TraceEvent {
  std::uint64_t tick = 0;
  EventKind kind = EventKind::Participate;
  std::optional<AgentId> agent_id;
  std::optional<Signifier> task_signifier;
  std::optional<double> completion_level;

  bool operator==(const TraceEvent&) const = default;
};

using Trace = std::vector<TraceEvent>;

struct SimState {
  std::uint64_t seed = 0;
  std::uint64_t tick = 1;  // next tick to execute
  std::uint64_t tick_budget = 0;
  bool early_stop = true;
  std::vector<Agent> agents;
  ItStructure it;
  WorkParams work;
  KnowledgeBase kb;
  Rng rng;
  std::optional<Trace> trace;

  // Tasks already counted in kb.tasks_completed, indexed by signifier.
  std::vector<bool> registered_complete;

  std::uint64_t ticks_elapsed() const noexcept { return tick - 1; }
};

/// Executes one tick: agents in ascending id order each draw for
/// participation, then request, work and submit. Advances `state.tick`.
void tick(SimState& state);

/// Moves the submission buffer through the filter into the knowledge base.
/// Every buffered submission pays its task's cost, accepted or not.
void flush(SimState& state);

struct RunOptions {
  bool collect_trace = false;
  /// Called after each tick (and its flush, if any) with the tick just
  /// completed.
  std::function<void(std::uint64_t completed_tick, const SimState&)> on_tick;
};

/// Drives a materialized state to the end of its budget, or to early stop
/// once every task is complete. Always ends with a flush of any leftovers.
void run_to_end(SimState& state, const RunOptions& options = {});

}  // namespace crowdsim
