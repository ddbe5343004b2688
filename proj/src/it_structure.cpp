#include "crowdsim/it_structure.hpp"

#include <string>

namespace crowdsim {

const char* to_string(FilterKind kind) noexcept {
  switch (kind) {
    case FilterKind::PassThrough:
      return "pass_through";
    case FilterKind::Threshold:
      return "threshold";
    case FilterKind::BestPerTask:
      return "best_per_task";
  }
  return "unknown";
}

TaskPool::TaskPool(std::vector<Task> tasks, double completion_threshold)
    : tasks_(std::move(tasks)), threshold_(completion_threshold) {
  if (!(threshold_ > 0.0 && threshold_ <= 1.0)) {
    throw std::invalid_argument("completion_threshold must be in (0,1]");
  }
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    if (tasks_[i].signifier != i) {
      throw std::invalid_argument("task signifiers must be 0..N-1 in order (got " +
                                  std::to_string(tasks_[i].signifier) + " at position " +
                                  std::to_string(i) + ")");
    }
    index(tasks_[i]);
  }
}

std::optional<Signifier> TaskPool::oldest_incomplete(const std::set<Signifier>& excluded) const {
  for (Signifier s : incomplete_) {
    if (!excluded.contains(s)) return s;
  }
  return std::nullopt;
}

std::optional<Signifier> TaskPool::least_completed() const {
  if (by_completion_.empty()) return std::nullopt;
  return by_completion_.begin()->second;
}

void TaskPool::index(const Task& task) {
  if (!(task.completion >= 0.0 && task.completion <= 1.0)) {
    throw std::logic_error("task " + std::to_string(task.signifier) +
                           " completion left [0,1]: " + std::to_string(task.completion));
  }
  index_unchecked(task);
}

void TaskPool::index_unchecked(const Task& task) {
  if (is_complete(task, threshold_)) return;
  incomplete_.insert(task.signifier);
  by_completion_.emplace(task.completion, task.signifier);
}

void TaskPool::unindex(const Task& task) {
  incomplete_.erase(task.signifier);
  by_completion_.erase({task.completion, task.signifier});
}

}  // namespace crowdsim
