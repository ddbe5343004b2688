#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "crowdsim/it_structure.hpp"
#include "crowdsim/model.hpp"
#include "crowdsim/rng.hpp"

namespace crowdsim {

/// `noise_epsilon` is the half-width of the multiplicative jitter applied to
/// each work gain. Zero makes work deterministic and consumes no draws.
struct WorkParams {
  double noise_epsilon = 0.0;

  bool operator==(const WorkParams&) const = default;
};

struct WorkOutcome {
  double new_completion = 0.0;
  double submission_level = 0.0;
};

/// One draw; true with probability `agent.motivation`.
bool participates(const Agent& agent, Rng& rng);

/// Episodic: oldest incomplete task not yet checked out this tick (and marks
/// it checked out). Collaborative: least-completed incomplete task, shared
/// freely within a tick. Empty when nothing is left to hand out.
std::optional<Signifier> assign_task(const ItStructure& it, const Agent& agent,
                                     std::set<Signifier>& checked_out_this_tick);

/// Applies one attempt of `agent` to `task`.
///
/// The raw gain is success_rate * (1 - difficulty) * noise, where noise is 1
/// when epsilon is zero and Uniform[1-eps, 1+eps] otherwise. Episodic tasks
/// keep the best single attempt; collaborative tasks accumulate gains. Both
/// are clamped to [0,1]. Bumps `task.attempts` and `agent.attempts_made`.
WorkOutcome apply_work(Agent& agent, Task& task, ItForm form, const WorkParams& params,
                       Rng& rng);

std::vector<Submission> filter_submissions(const FilterPolicy& policy,
                                           std::span<const Submission> batch,
                                           double completion_threshold);

}  // namespace crowdsim
