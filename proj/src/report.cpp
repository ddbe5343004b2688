#include "crowdsim/report.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace crowdsim {

namespace {

constexpr std::array<const char*, 8> kReportFields = {
    "seed",           "ticks_elapsed",   "number_of_submissions", "number_of_submissions_completed",
    "accepted_submissions", "tasks_completed", "total_cost",   "mean_task_completion"};

std::string six_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Shortest representation that parses back to the same double.
std::string exact(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw UsageError("unknown report format \"" + std::string(name) + "\" (expected json or csv)");
}

Report tally(const SimState& state) {
  Report r;
  r.seed = state.seed;
  r.ticks_elapsed = state.ticks_elapsed();
  r.number_of_submissions = state.kb.total_submissions;
  r.number_of_submissions_completed = state.kb.completed_submissions;
  r.accepted_submissions = state.kb.accepted_submissions;
  r.tasks_completed = state.kb.tasks_completed;
  r.total_cost = state.kb.total_cost;

  const auto& tasks = state.it.pool.tasks();
  if (!tasks.empty()) {
    double sum = 0.0;
    for (const Task& t : tasks) sum += t.completion;
    r.mean_task_completion = sum / static_cast<double>(tasks.size());
  }
  return r;
}

std::string report_csv_header() {
  std::string out;
  for (std::size_t i = 0; i < kReportFields.size(); ++i) {
    if (i) out += ',';
    out += kReportFields[i];
  }
  return out + "\n";
}

std::string report_csv_row(const Report& r) {
  std::ostringstream out;
  out << r.seed << ',' << r.ticks_elapsed << ',' << r.number_of_submissions << ','
      << r.number_of_submissions_completed << ',' << r.accepted_submissions << ','
      << r.tasks_completed << ',' << six_digits(r.total_cost) << ','
      << six_digits(r.mean_task_completion) << '\n';
  return out.str();
}

std::string emit_report(const Report& r, ReportFormat format) {
  if (format == ReportFormat::Csv) return report_csv_header() + report_csv_row(r);

  nlohmann::ordered_json doc;
  doc["seed"] = r.seed;
  doc["ticks_elapsed"] = r.ticks_elapsed;
  doc["number_of_submissions"] = r.number_of_submissions;
  doc["number_of_submissions_completed"] = r.number_of_submissions_completed;
  doc["accepted_submissions"] = r.accepted_submissions;
  doc["tasks_completed"] = r.tasks_completed;
  doc["total_cost"] = r.total_cost;
  doc["mean_task_completion"] = r.mean_task_completion;
  return doc.dump(2) + "\n";
}

std::string emit_report(const Report& r, std::string_view format) {
  return emit_report(r, parse_report_format(format));
}

Report parse_report_json(std::string_view text) {
  const auto doc = nlohmann::json::parse(text.begin(), text.end());
  Report r;
  r.seed = doc.at("seed").get<std::uint64_t>();
  r.ticks_elapsed = doc.at("ticks_elapsed").get<std::uint64_t>();
  r.number_of_submissions = doc.at("number_of_submissions").get<std::uint64_t>();
  r.number_of_submissions_completed = doc.at("number_of_submissions_completed").get<std::uint64_t>();
  r.accepted_submissions = doc.at("accepted_submissions").get<std::uint64_t>();
  r.tasks_completed = doc.at("tasks_completed").get<std::uint64_t>();
  r.total_cost = doc.at("total_cost").get<double>();
  r.mean_task_completion = doc.at("mean_task_completion").get<double>();
  return r;
}

void emit_trace(const Trace& trace, std::ostream& sink) {
  sink << "tick,kind,agent_id,task_signifier,completion_level\n";
  for (const TraceEvent& e : trace) {
    sink << e.tick << ',' << to_string(e.kind) << ',';
    if (e.agent_id) sink << *e.agent_id;
    sink << ',';
    if (e.task_signifier) sink << *e.task_signifier;
    sink << ',';
    if (e.completion_level) sink << exact(*e.completion_level);
    sink << '\n';
  }
  if (!sink) throw std::ios_base::failure("failed writing trace");
}

std::string emit_trace(const Trace& trace) {
  std::ostringstream out;
  emit_trace(trace, out);
  return out.str();
}

}  // namespace crowdsim
