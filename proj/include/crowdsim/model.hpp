#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace crowdsim {

using AgentId = std::uint64_t;
using Signifier = std::uint64_t;

/// Raised by the validated constructors. `field()` names the offending input.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A crowd member. `motivation` is the per-tick participation probability,
/// `success_rate` scales how much completion one attempt produces.
struct Agent {
  AgentId id = 0;
  double motivation = 0.0;
  double success_rate = 0.0;
  std::uint64_t attempts_made = 0;

  bool operator==(const Agent&) const = default;
};

/// A knowledge task. `completion` stays in [0,1]; `difficulty` in [0,1).
struct Task {
  Signifier signifier = 0;
  double difficulty = 0.0;
  double cost = 0.0;
  double completion = 0.0;
  std::uint64_t attempts = 0;

  bool operator==(const Task&) const = default;
};

/// One send-back of a task. `completion_level` is the task's overall
/// completion after the attempt.
struct Submission {
  Signifier task_signifier = 0;
  AgentId agent_id = 0;
  std::uint64_t tick = 0;
  double completion_level = 0.0;

  bool operator==(const Submission&) const = default;
};

enum class ItForm { Episodic, Collaborative };

const char* to_string(ItForm form) noexcept;

struct KnowledgeBase {
  std::uint64_t total_submissions = 0;
  std::uint64_t accepted_submissions = 0;
  std::uint64_t completed_submissions = 0;
  std::uint64_t tasks_completed = 0;
  double total_cost = 0.0;

  bool operator==(const KnowledgeBase&) const = default;
};

Agent make_agent(AgentId id, double motivation, double success_rate);
Task make_task(Signifier signifier, double difficulty, double cost);

// Inclusive: completion >= threshold.
bool is_complete(const Task& task, double threshold) noexcept;
bool is_complete(double completion, double threshold) noexcept;

}  // namespace crowdsim
