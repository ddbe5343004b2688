#include "crowdsim/engine.hpp"

#include <numeric>

namespace crowdsim {

const char* to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::Participate:
      return "Participate";
    case EventKind::Assign:
      return "Assign";
    case EventKind::Submit:
      return "Submit";
    case EventKind::Flush:
      return "Flush";
    case EventKind::Complete:
      return "Complete";
  }
  return "Unknown";
}

namespace {

void record(SimState& state, TraceEvent event) {
  if (state.trace) state.trace->push_back(std::move(event));
}

}  // namespace

void tick(SimState& state) {
  const std::uint64_t now = state.tick;
  const double threshold = state.it.completion_threshold();
  std::set<Signifier> checked_out;

  for (Agent& agent : state.agents) {
    if (!participates(agent, state.rng)) continue;
    record(state, {now, EventKind::Participate, agent.id, std::nullopt, std::nullopt});

    const auto assigned = assign_task(state.it, agent, checked_out);
    if (!assigned) continue;
    record(state, {now, EventKind::Assign, agent.id, *assigned, std::nullopt});

    const WorkOutcome outcome = state.it.pool.modify(*assigned, [&](Task& task) {
      return apply_work(agent, task, state.it.form, state.work, state.rng);
    });

    state.it.submission_buffer.push_back(
        Submission{*assigned, agent.id, now, outcome.submission_level});
    ++state.kb.total_submissions;
    if (is_complete(outcome.submission_level, threshold)) ++state.kb.completed_submissions;
    record(state, {now, EventKind::Submit, agent.id, *assigned, outcome.submission_level});
  }

  ++state.tick;
}

void flush(SimState& state) {
  ItStructure& it = state.it;
  const std::uint64_t label = state.tick - 1;  // last completed tick

  const auto accepted = filter_submissions(it.filter, it.submission_buffer,
                                           it.completion_threshold());
  state.kb.accepted_submissions += accepted.size();
  for (const Submission& s : it.submission_buffer) {
    state.kb.total_cost += it.pool.at(s.task_signifier).cost;
  }
  it.submission_buffer.clear();
  record(state, {label, EventKind::Flush, std::nullopt, std::nullopt, std::nullopt});

  const auto& tasks = it.pool.tasks();
  state.registered_complete.resize(tasks.size(), false);
  std::uint64_t complete = 0;
  for (const Task& task : tasks) {
    if (!is_complete(task, it.completion_threshold())) continue;
    ++complete;
    if (!state.registered_complete[task.signifier]) {
      state.registered_complete[task.signifier] = true;
      record(state, {label, EventKind::Complete, std::nullopt, task.signifier, task.completion});
    }
  }
  state.kb.tasks_completed = complete;
}

void run_to_end(SimState& state, const RunOptions& options) {
  const std::uint64_t period = state.it.update_period;
  while (state.tick <= state.tick_budget) {
    const std::uint64_t current = state.tick;
    tick(state);

    const bool stopping = state.early_stop && state.it.pool.all_complete();
    if (current % period == 0 || (stopping && !state.it.submission_buffer.empty())) {
      flush(state);
    }
    if (options.on_tick) options.on_tick(current, state);
    if (stopping) break;
  }
  if (!state.it.submission_buffer.empty()) flush(state);
}

}  // namespace crowdsim
