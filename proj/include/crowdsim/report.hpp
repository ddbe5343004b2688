#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crowdsim/engine.hpp"

namespace crowdsim {

struct Report {
  std::uint64_t seed = 0;
  std::uint64_t ticks_elapsed = 0;
  std::uint64_t number_of_submissions = 0;
  std::uint64_t number_of_submissions_completed = 0;
  std::uint64_t accepted_submissions = 0;
  std::uint64_t tasks_completed = 0;
  double total_cost = 0.0;
  double mean_task_completion = 0.0;

  bool operator==(const Report&) const = default;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ReportFormat { Json, Csv };

ReportFormat parse_report_format(std::string_view name);

Report tally(const SimState& state);

std::string emit_report(const Report& report, ReportFormat format);
std::string emit_report(const Report& report, std::string_view format);

/// Inverse of the JSON rendering.
Report parse_report_json(std::string_view text);

std::string report_csv_header();
std::string report_csv_row(const Report& report);

void emit_trace(const Trace& trace, std::ostream& sink);
std::string emit_trace(const Trace& trace);

}  // namespace crowdsim
