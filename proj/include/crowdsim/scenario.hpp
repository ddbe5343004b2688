#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "crowdsim/engine.hpp"
#include "crowdsim/it_structure.hpp"
#include "crowdsim/model.hpp"

namespace crowdsim {

/// Constant value or closed uniform range. A constant is stored as lo == hi.
struct Dist {
  enum class Kind { Constant, Uniform };
  Kind kind = Kind::Constant;
  double lo = 0.0;
  double hi = 0.0;

  static Dist constant(double v) { return {Kind::Constant, v, v}; }
  static Dist uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }

  bool operator==(const Dist&) const = default;
};

struct AgentSpec {
  double motivation = 0.0;
  double success_rate = 0.0;
  bool operator==(const AgentSpec&) const = default;
};

struct AgentGenerator {
  std::uint64_t count = 0;
  Dist motivation;
  Dist success_rate;
  bool operator==(const AgentGenerator&) const = default;
};

struct TaskSpec {
  double difficulty = 0.0;
  double cost = 0.0;
  bool operator==(const TaskSpec&) const = default;
};

struct TaskGenerator {
  std::uint64_t count = 0;
  Dist difficulty;
  Dist cost;
  bool operator==(const TaskGenerator&) const = default;
};

using AgentSource = std::variant<std::vector<AgentSpec>, AgentGenerator>;
using TaskSource = std::variant<std::vector<TaskSpec>, TaskGenerator>;

struct Scenario {
  ItForm form = ItForm::Episodic;
  std::uint64_t ticks = 1;
  std::uint64_t update_period = 1;
  double completion_threshold = 1.0;
  double noise_epsilon = 0.0;
  FilterPolicy filter;
  bool early_stop = true;
  AgentSource agents;
  TaskSource tasks;

  bool operator==(const Scenario&) const = default;
};

/// Carries every problem found, not just the first.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<std::string> errors);

  const std::vector<std::string>& errors() const noexcept { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Strict JSON parse: unknown keys, missing keys and wrong types are all
/// reported together. Does not range-check; see `validate`.
Scenario parse_scenario(std::string_view text);

/// Empty when the scenario is usable.
std::vector<std::string> validate(const Scenario& scenario);

/// parse_scenario followed by validate; throws ScenarioError on either.
Scenario load_scenario(std::string_view text);

/// Canonical JSON rendering accepted by parse_scenario.
std::string emit_scenario(const Scenario& scenario);

/// Builds the tick-1 state. Generated agents draw first, in id order, then
/// generated tasks; each uniform field costs one draw, constants none.
SimState materialize(const Scenario& scenario, std::uint64_t seed, bool collect_trace = false);

}  // namespace crowdsim
