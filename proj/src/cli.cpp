#include "crowdsim/cli.hpp"

#include <atomic>
#include <charconv>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "crowdsim/report.hpp"
#include "crowdsim/run.hpp"
#include "json.hpp"

namespace crowdsim::cli {

namespace fs = std::filesystem;

namespace {

/// Runtime or I/O failure (exit code 2).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError(path + ": read failed");
  return buf.str();
}

/// Writes to a sibling temporary and renames it into place, so a failed
/// command never leaves a partial file behind.
void write_file_atomically(const std::string& path, const std::string& bytes) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path + ": cannot open for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError(path + ": write failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError(path + ": rename failed: " + ec.message());
  }
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError(std::string(what) + ": expected a non-negative integer, got \"" +
                     std::string(text) + "\"");
  }
  return value;
}

Scenario load_scenario_file(const std::string& path) {
  return load_scenario(read_file(path));
}

void print_errors(std::ostream& err, const std::string& path, const ScenarioError& e) {
  for (const auto& line : e.errors()) err << path << ": " << line << "\n";
}

}  // namespace

SeedRange parse_seed_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    throw UsageError("--seeds: expected LO..HI, got \"" + std::string(text) + "\"");
  }
  SeedRange r{parse_u64(text.substr(0, dots), "--seeds"), parse_u64(text.substr(dots + 2), "--seeds")};
  if (r.lo > r.hi) throw UsageError("--seeds: empty range " + std::string(text));
  return r;
}

std::string sweep(const Scenario& scenario, SeedRange seeds, unsigned parallelism,
                  std::string_view format) {
  const ReportFormat fmt = parse_report_format(format);
  if (parallelism < 1) throw UsageError("--parallel must be at least 1");
  const std::uint64_t count = seeds.hi - seeds.lo + 1;
  if (count == 0) throw UsageError("--seeds: range too large");  // 0..UINT64_MAX wraps

  std::vector<Report> reports(count);
  std::vector<std::exception_ptr> failures(count);
  std::atomic<std::uint64_t> next{0};

  auto worker = [&] {
    for (std::uint64_t i = next++; i < count; i = next++) {
      try {
        reports[i] = run(scenario, seeds.lo + i).report;
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const auto threads = static_cast<std::uint64_t>(parallelism) < count ? parallelism
                                                                        : static_cast<unsigned>(count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  if (fmt == ReportFormat::Csv) {
    std::string out = report_csv_header();
    for (const Report& r : reports) out += report_csv_row(r);
    return out;
  }
  auto doc = nlohmann::ordered_json::array();
  for (const Report& r : reports) {
    doc.push_back(nlohmann::ordered_json::parse(emit_report(r, ReportFormat::Json)));
  }
  return doc.dump(2) + "\n";
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"crowdsim: agent-based simulator of knowledge generation by IT-mediated crowds"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::uint64_t seed = 0;
  std::string seeds_text;
  std::optional<std::string> format;
  std::string out_path;
  std::string trace_path;
  unsigned parallel = 1;

  auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a scenario file");
  validate_cmd->add_option("scenario,--scenario", scenario_path, "Scenario JSON file")->required();

  auto* run_cmd = app.add_subcommand("run", "Run one experiment and write its report");
  run_cmd->add_option("scenario,--scenario", scenario_path, "Scenario JSON file")->required();
  run_cmd->add_option("--seed", seed, "Random seed")->default_val(0);
  run_cmd->add_option("--format", format, "json (default) or csv");
  run_cmd->add_option("--out", out_path, "Report path (default: standard output)");
  run_cmd->add_option("--trace", trace_path, "Write the event trace CSV here");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run every seed in a range");
  sweep_cmd->add_option("scenario,--scenario", scenario_path, "Scenario JSON file")->required();
  sweep_cmd->add_option("--seeds", seeds_text, "Inclusive seed range LO..HI")->required();
  sweep_cmd->add_option("--format", format, "csv (default) or json");
  sweep_cmd->add_option("--out", out_path, "Output path (default: standard output)");
  sweep_cmd->add_option("--parallel", parallel, "Concurrent runs")->default_val(1)->check(
      CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "crowdsim: " << e.what() << "\n";
    if (!app.get_subcommands().empty()) err << app.get_subcommands().front()->help();
    return kUsageError;
  }

  auto emit = [&](const std::string& bytes) {
    if (out_path.empty()) {
      out << bytes;
      out.flush();
      if (!out) throw IoError("standard output: write failed");
    } else {
      write_file_atomically(out_path, bytes);
    }
  };

  try {
    if (validate_cmd->parsed()) {
      load_scenario_file(scenario_path);
      out << "ok\n";
      return kOk;
    }

    if (run_cmd->parsed()) {
      const ReportFormat fmt = parse_report_format(format.value_or("json"));
      const Scenario scenario = load_scenario_file(scenario_path);
      RunOptions options;
      options.collect_trace = !trace_path.empty();
      const RunResult result = run(scenario, seed, options);
      const std::string report = emit_report(result.report, fmt);
      if (options.collect_trace) write_file_atomically(trace_path, emit_trace(*result.trace));
      try {
        emit(report);
      } catch (...) {
        if (options.collect_trace) {
          std::error_code ignored;
          fs::remove(trace_path, ignored);
        }
        throw;
      }
      return kOk;
    }

    if (sweep_cmd->parsed()) {
      const SeedRange seeds = parse_seed_range(seeds_text);
      const std::string fmt = format.value_or("csv");
      parse_report_format(fmt);
      const Scenario scenario = load_scenario_file(scenario_path);
      emit(sweep(scenario, seeds, parallel, fmt));
      return kOk;
    }
  } catch (const ScenarioError& e) {
    print_errors(err, scenario_path, e);
    return kUsageError;
  } catch (const UsageError& e) {
    err << "crowdsim: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "crowdsim: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace crowdsim::cli
