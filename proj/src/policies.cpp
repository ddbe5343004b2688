#include "crowdsim/policies.hpp"

#include <algorithm>
#include <map>

namespace crowdsim {

bool participates(const Agent& agent, Rng& rng) { return rng.uniform01() < agent.motivation; }

std::optional<Signifier> assign_task(const ItStructure& it, const Agent& /*agent*/,
                                     std::set<Signifier>& checked_out_this_tick) {
  switch (it.form) {
    case ItForm::Episodic: {
      auto next = it.pool.oldest_incomplete(checked_out_this_tick);
      if (next) checked_out_this_tick.insert(*next);
      return next;
    }
    case ItForm::Collaborative:
      return it.pool.least_completed();
  }
  return std::nullopt;
}

WorkOutcome apply_work(Agent& agent, Task& task, ItForm form, const WorkParams& params,
                       Rng& rng) {
  double noise = 1.0;
  if (params.noise_epsilon > 0.0) {
    noise = rng.uniform(1.0 - params.noise_epsilon, 1.0 + params.noise_epsilon);
  }
  const double raw_gain = agent.success_rate * (1.0 - task.difficulty) * noise;

  double updated = task.completion;
  switch (form) {
    case ItForm::Episodic:
      updated = std::max(task.completion, std::clamp(raw_gain, 0.0, 1.0));
      break;
    case ItForm::Collaborative:
      updated = std::clamp(task.completion + raw_gain, 0.0, 1.0);
      break;
  }

  task.completion = updated;
  ++task.attempts;
  ++agent.attempts_made;
  return WorkOutcome{updated, updated};
}

std::vector<Submission> filter_submissions(const FilterPolicy& policy,
                                           std::span<const Submission> batch,
                                           double /*completion_threshold*/) {
  std::vector<Submission> accepted;
  switch (policy.kind) {
    case FilterKind::PassThrough:
      accepted.assign(batch.begin(), batch.end());
      break;
    case FilterKind::Threshold:
      std::copy_if(batch.begin(), batch.end(), std::back_inserter(accepted),
                   [&](const Submission& s) { return s.completion_level >= policy.threshold; });
      break;
    case FilterKind::BestPerTask: {
      // task -> position of the best submission so far; strict > keeps the earliest tie.
      std::map<Signifier, std::size_t> best;
      for (std::size_t i = 0; i < batch.size(); ++i) {
        auto [it, inserted] = best.try_emplace(batch[i].task_signifier, i);
        if (!inserted && batch[i].completion_level > batch[it->second].completion_level) {
          it->second = i;
        }
      }
      std::vector<std::size_t> keep;
      keep.reserve(best.size());
      for (const auto& [task, pos] : best) keep.push_back(pos);
      std::sort(keep.begin(), keep.end());
      accepted.reserve(keep.size());
      for (std::size_t pos : keep) accepted.push_back(batch[pos]);
      break;
    }
  }
  return accepted;
}

}  // namespace crowdsim
