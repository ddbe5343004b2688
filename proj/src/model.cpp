#include "crowdsim/model.hpp"

#include <cmath>

namespace crowdsim {

namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

const char* to_string(ItForm form) noexcept {
  switch (form) {
    case ItForm::Episodic:
      return "episodic";
    case ItForm::Collaborative:
      return "collaborative";
  }
  return "unknown";
}

Agent make_agent(AgentId id, double motivation, double success_rate) {
  if (!in_unit_interval(motivation)) {
    throw ValidationError("motivation", "motivation out of range: must be in [0,1]");
  }
  if (!in_unit_interval(success_rate)) {
    throw ValidationError("success_rate", "success_rate out of range: must be in [0,1]");
  }
  return Agent{id, motivation, success_rate, 0};
}

Task make_task(Signifier signifier, double difficulty, double cost) {
  // NaN fails both comparisons and lands here too.
  if (!(difficulty >= 0.0 && difficulty < 1.0)) {
    throw ValidationError("difficulty", "difficulty out of range: must be in [0,1)");
  }
  if (!(cost >= 0.0) || !std::isfinite(cost)) {
    throw ValidationError("cost", "cost out of range: must be finite and non-negative");
  }
  return Task{signifier, difficulty, cost, 0.0, 0};
}

bool is_complete(double completion, double threshold) noexcept { return completion >= threshold; }

bool is_complete(const Task& task, double threshold) noexcept {
  return is_complete(task.completion, threshold);
}

}  // namespace crowdsim
