#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "crowdsim/model.hpp"

namespace crowdsim {

enum class FilterKind { PassThrough, Threshold, BestPerTask };

/// How the IT structure screens a flush window before it reaches the
/// knowledge base. `threshold` is only meaningful for FilterKind::Threshold.
struct FilterPolicy {
  FilterKind kind = FilterKind::PassThrough;
  double threshold = 0.0;

  static FilterPolicy pass_through() { return {FilterKind::PassThrough, 0.0}; }
  static FilterPolicy threshold_at(double level) { return {FilterKind::Threshold, level}; }
  static FilterPolicy best_per_task() { return {FilterKind::BestPerTask, 0.0}; }

  bool operator==(const FilterPolicy&) const = default;
};

const char* to_string(FilterKind kind) noexcept;

/// Tasks in creation order plus two indexes over the incomplete ones: by
/// signifier (episodic hand-out) and by (completion, signifier)
/// (collaborative hand-out). Completion may only change through `modify` so
/// the indexes stay in sync.
class TaskPool {
 public:
  TaskPool() = default;

  /// Signifiers must be exactly 0..N-1 in order.
  TaskPool(std::vector<Task> tasks, double completion_threshold);

  const std::vector<Task>& tasks() const noexcept { return tasks_; }
  const Task& at(Signifier signifier) const { return tasks_.at(signifier); }
  std::size_t size() const noexcept { return tasks_.size(); }
  bool empty() const noexcept { return tasks_.empty(); }
  double completion_threshold() const noexcept { return threshold_; }

  std::size_t incomplete_count() const noexcept { return incomplete_.size(); }
  bool all_complete() const noexcept { return incomplete_.empty(); }

  /// Lowest incomplete signifier not in `excluded`.
  std::optional<Signifier> oldest_incomplete(const std::set<Signifier>& excluded) const;

  /// Incomplete task with the lowest completion; ties go to the lowest signifier.
  std::optional<Signifier> least_completed() const;

  /// Runs `fn(Task&)` and re-indexes the task afterwards. Throws
  /// std::logic_error if `fn` leaves completion outside [0,1].
  template <class Fn>
  decltype(auto) modify(Signifier signifier, Fn&& fn) {
    Task& task = tasks_.at(signifier);
    unindex(task);
    try {
      if constexpr (std::is_void_v<std::invoke_result_t<Fn, Task&>>) {
        std::forward<Fn>(fn)(task);
        index(task);
      } else {
        auto result = std::forward<Fn>(fn)(task);
        index(task);
        return result;
      }
    } catch (...) {
      index_unchecked(task);
      throw;
    }
  }

 private:
  void index(const Task& task);
  void index_unchecked(const Task& task);
  void unindex(const Task& task);

  std::vector<Task> tasks_;
  double threshold_ = 1.0;
  std::set<Signifier> incomplete_;
  std::set<std::pair<double, Signifier>> by_completion_;
};

/// The mediating artifact: fixed form, the task pool, and the submissions
/// waiting for the next knowledge-base update.
struct ItStructure {
  ItForm form = ItForm::Episodic;
  TaskPool pool;
  std::vector<Submission> submission_buffer;
  std::uint64_t update_period = 1;
  FilterPolicy filter;

  double completion_threshold() const noexcept { return pool.completion_threshold(); }
};

}  // namespace crowdsim
