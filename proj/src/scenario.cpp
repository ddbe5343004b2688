#include "crowdsim/scenario.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "json.hpp"

namespace crowdsim {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
  std::ostringstream out;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i) out << "; ";
    out << errors[i];
  }
  return out.str();
}

const char* type_name(const json& v) { return v.type_name(); }

/// Collects field errors while walking a parsed document.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  void error(const std::string& path, const std::string& message) {
    errors_.push_back(path + ": " + message);
  }

  void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) error(join(path, key), "unknown key");
    }
  }

  const json* field(const json& obj, const std::string& path, const char* key, bool required) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) error(join(path, key), "missing required key");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> real(const json& v, const std::string& path) {
    if (!v.is_number()) {
      error(path, std::string("expected a number, got ") + type_name(v));
      return std::nullopt;
    }
    return v.get<double>();
  }

  std::optional<std::uint64_t> count(const json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
      error(path, "expected a non-negative integer, got " + v.dump());
      return std::nullopt;
    }
    error(path, std::string("expected a non-negative integer, got ") + type_name(v));
    return std::nullopt;
  }

  std::optional<bool> boolean(const json& v, const std::string& path) {
    if (!v.is_boolean()) {
      error(path, std::string("expected a boolean, got ") + type_name(v));
      return std::nullopt;
    }
    return v.get<bool>();
  }

  std::optional<Dist> dist(const json& v, const std::string& path) {
    if (!v.is_object() || v.size() != 1) {
      error(path, R"(expected {"constant": v} or {"uniform": [lo, hi]})");
      return std::nullopt;
    }
    if (auto c = v.find("constant"); c != v.end()) {
      auto value = real(*c, path + ".constant");
      if (!value) return std::nullopt;
      return Dist::constant(*value);
    }
    if (auto u = v.find("uniform"); u != v.end()) {
      if (!u->is_array() || u->size() != 2) {
        error(path + ".uniform", "expected an array [lo, hi]");
        return std::nullopt;
      }
      auto lo = real((*u)[0], path + ".uniform[0]");
      auto hi = real((*u)[1], path + ".uniform[1]");
      if (!lo || !hi) return std::nullopt;
      return Dist::uniform(*lo, *hi);
    }
    error(join(path, v.begin().key()), R"(unknown distribution (expected "constant" or "uniform"))");
    return std::nullopt;
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

 private:
  std::vector<std::string>& errors_;
};

struct FieldPair {
  const char* first;
  const char* second;
};

template <class Spec, class Generator>
std::optional<std::variant<std::vector<Spec>, Generator>> read_population(
    Reader& r, const json& v, const std::string& path, FieldPair fields, double Spec::*first,
    double Spec::*second, Dist Generator::*first_dist, Dist Generator::*second_dist) {
  if (v.is_array()) {
    std::vector<Spec> list;
    bool ok = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string item = path + "[" + std::to_string(i) + "]";
      const json& e = v[i];
      if (!e.is_object()) {
        r.error(item, std::string("expected an object, got ") + type_name(e));
        ok = false;
        continue;
      }
      r.check_keys(e, item, {fields.first, fields.second});
      Spec spec;
      const json* a = r.field(e, item, fields.first, true);
      const json* b = r.field(e, item, fields.second, true);
      auto av = a ? r.real(*a, Reader::join(item, fields.first)) : std::nullopt;
      auto bv = b ? r.real(*b, Reader::join(item, fields.second)) : std::nullopt;
      if (!av || !bv) {
        ok = false;
        continue;
      }
      spec.*first = *av;
      spec.*second = *bv;
      list.push_back(spec);
    }
    if (!ok) return std::nullopt;
    return list;
  }
  if (v.is_object()) {
    if (v.contains("list")) {
      r.error(path, "exactly one of list or generator");
      return std::nullopt;
    }
    r.check_keys(v, path, {"count", fields.first, fields.second});
    const json* c = r.field(v, path, "count", true);
    const json* a = r.field(v, path, fields.first, true);
    const json* b = r.field(v, path, fields.second, true);
    auto cv = c ? r.count(*c, path + ".count") : std::nullopt;
    auto av = a ? r.dist(*a, Reader::join(path, fields.first)) : std::nullopt;
    auto bv = b ? r.dist(*b, Reader::join(path, fields.second)) : std::nullopt;
    if (!cv || !av || !bv) return std::nullopt;
    Generator g;
    g.count = *cv;
    g.*first_dist = *av;
    g.*second_dist = *bv;
    return g;
  }
  r.error(path, std::string("expected an array or a generator object, got ") + type_name(v));
  return std::nullopt;
}

/// nlohmann keeps the last of duplicate keys; a duplicated agents/tasks key
/// means a document supplied two populations.
json::parser_callback_t duplicate_key_check(std::vector<std::string>& errors) {
  auto seen = std::make_shared<std::vector<std::set<std::string>>>();
  return [&errors, seen](int depth, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        seen->emplace_back();
        break;
      case json::parse_event_t::object_end:
        if (!seen->empty()) seen->pop_back();
        break;
      case json::parse_event_t::key: {
        const auto key = parsed.get<std::string>();
        if (!seen->empty() && !seen->back().insert(key).second) {
          if (depth == 1 && (key == "agents" || key == "tasks")) {
            errors.push_back(key + ": exactly one of list or generator");
          } else {
            errors.push_back(key + ": duplicate key");
          }
        }
        break;
      }
      default:
        break;
    }
    return true;
  };
}

bool unit(double v) { return v >= 0.0 && v <= 1.0; }

void check_dist(std::vector<std::string>& errors, const Dist& d, const std::string& path,
                bool (*ok)(double), const char* range) {
  if (d.kind == Dist::Kind::Constant) {
    if (!ok(d.lo)) errors.push_back(path + ".constant must be in " + range);
    return;
  }
  if (!ok(d.lo)) errors.push_back(path + ".uniform lower bound must be in " + range);
  if (!ok(d.hi)) errors.push_back(path + ".uniform upper bound must be in " + range);
  if (!(d.lo <= d.hi)) errors.push_back(path + ".uniform requires lo <= hi");
}

bool difficulty_ok(double v) { return v >= 0.0 && v < 1.0; }
bool cost_ok(double v) { return v >= 0.0 && std::isfinite(v); }

double sample(const Dist& d, Rng& rng) {
  if (d.kind == Dist::Kind::Constant) return d.lo;
  return rng.uniform(d.lo, d.hi);
}

ordered_json dist_json(const Dist& d) {
  ordered_json out = ordered_json::object();
  if (d.kind == Dist::Kind::Constant) {
    out["constant"] = d.lo;
  } else {
    out["uniform"] = ordered_json::array({d.lo, d.hi});
  }
  return out;
}

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

Scenario parse_scenario(std::string_view text) {
  std::vector<std::string> errors;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), duplicate_key_check(errors));
  } catch (const json::parse_error& e) {
    throw ScenarioError({std::string("syntax error at byte ") + std::to_string(e.byte) + ": " +
                         e.what()});
  }

  Reader r(errors);
  if (!doc.is_object()) {
    r.error("(document)", std::string("expected a JSON object, got ") + type_name(doc));
    throw ScenarioError(std::move(errors));
  }

  r.check_keys(doc, "", {"form", "ticks", "update_period", "completion_threshold", "noise_epsilon",
                         "filter", "early_stop", "agents", "tasks"});

  Scenario s;

  if (const json* v = r.field(doc, "", "form", true)) {
    if (!v->is_string()) {
      r.error("form", std::string("expected a string, got ") + type_name(*v));
    } else if (*v == "episodic") {
      s.form = ItForm::Episodic;
    } else if (*v == "collaborative") {
      s.form = ItForm::Collaborative;
    } else {
      r.error("form", "unknown value " + v->dump() + R"( (expected "episodic" or "collaborative"))");
    }
  }
  if (const json* v = r.field(doc, "", "ticks", true)) {
    if (auto n = r.count(*v, "ticks")) s.ticks = *n;
  }
  if (const json* v = r.field(doc, "", "update_period", true)) {
    if (auto n = r.count(*v, "update_period")) s.update_period = *n;
  }
  if (const json* v = r.field(doc, "", "completion_threshold", true)) {
    if (auto x = r.real(*v, "completion_threshold")) s.completion_threshold = *x;
  }
  if (const json* v = r.field(doc, "", "noise_epsilon", false)) {
    if (auto x = r.real(*v, "noise_epsilon")) s.noise_epsilon = *x;
  }
  if (const json* v = r.field(doc, "", "early_stop", false)) {
    if (auto b = r.boolean(*v, "early_stop")) s.early_stop = *b;
  }
  if (const json* v = r.field(doc, "", "filter", false)) {
    if (!v->is_object()) {
      r.error("filter", std::string("expected an object, got ") + type_name(*v));
    } else {
      r.check_keys(*v, "filter", {"policy", "threshold"});
      const json* policy = r.field(*v, "filter", "policy", true);
      const json* threshold = r.field(*v, "filter", "threshold", false);
      if (policy && !policy->is_string()) {
        r.error("filter.policy", std::string("expected a string, got ") + type_name(*policy));
      } else if (policy) {
        const auto name = policy->get<std::string>();
        if (name == "pass_through") {
          s.filter = FilterPolicy::pass_through();
        } else if (name == "best_per_task") {
          s.filter = FilterPolicy::best_per_task();
        } else if (name == "threshold") {
          if (!threshold) {
            r.error("filter.threshold", R"(required when policy is "threshold")");
          } else if (auto x = r.real(*threshold, "filter.threshold")) {
            s.filter = FilterPolicy::threshold_at(*x);
          }
        } else {
          r.error("filter.policy", "unknown value " + policy->dump() +
                                       R"( (expected "pass_through", "threshold" or "best_per_task"))");
        }
        if (threshold && name != "threshold") {
          r.error("filter.threshold", R"(only allowed when policy is "threshold")");
        }
      }
    }
  }
  if (const json* v = r.field(doc, "", "agents", true)) {
    auto agents = read_population<AgentSpec, AgentGenerator>(
        r, *v, "agents", {"motivation", "success_rate"}, &AgentSpec::motivation,
        &AgentSpec::success_rate, &AgentGenerator::motivation, &AgentGenerator::success_rate);
    if (agents) s.agents = std::move(*agents);
  }
  if (const json* v = r.field(doc, "", "tasks", true)) {
    auto tasks = read_population<TaskSpec, TaskGenerator>(
        r, *v, "tasks", {"difficulty", "cost"}, &TaskSpec::difficulty, &TaskSpec::cost,
        &TaskGenerator::difficulty, &TaskGenerator::cost);
    if (tasks) s.tasks = std::move(*tasks);
  }

  if (!errors.empty()) throw ScenarioError(std::move(errors));
  return s;
}

std::vector<std::string> validate(const Scenario& s) {
  std::vector<std::string> errors;
  if (s.update_period < 1) errors.push_back("update_period must be a positive integer");
  if (!(s.completion_threshold > 0.0 && s.completion_threshold <= 1.0)) {
    errors.push_back("completion_threshold must be in (0,1]");
  }
  if (!(s.noise_epsilon >= 0.0 && s.noise_epsilon < 1.0)) {
    errors.push_back("noise_epsilon must be in [0,1)");
  }
  if (s.filter.kind == FilterKind::Threshold && !unit(s.filter.threshold)) {
    errors.push_back("filter.threshold must be in [0,1]");
  }

  if (const auto* list = std::get_if<std::vector<AgentSpec>>(&s.agents)) {
    if (list->empty()) errors.push_back("agents: at least one agent is required");
    for (std::size_t i = 0; i < list->size(); ++i) {
      const std::string item = "agents[" + std::to_string(i) + "]";
      if (!unit((*list)[i].motivation)) errors.push_back(item + ".motivation must be in [0,1]");
      if (!unit((*list)[i].success_rate)) errors.push_back(item + ".success_rate must be in [0,1]");
    }
  } else {
    const auto& g = std::get<AgentGenerator>(s.agents);
    if (g.count < 1) errors.push_back("agents.count must be at least 1");
    check_dist(errors, g.motivation, "agents.motivation", unit, "[0,1]");
    check_dist(errors, g.success_rate, "agents.success_rate", unit, "[0,1]");
  }

  if (const auto* list = std::get_if<std::vector<TaskSpec>>(&s.tasks)) {
    if (list->empty()) errors.push_back("tasks: at least one task is required");
    for (std::size_t i = 0; i < list->size(); ++i) {
      const std::string item = "tasks[" + std::to_string(i) + "]";
      if (!difficulty_ok((*list)[i].difficulty)) errors.push_back(item + ".difficulty must be in [0,1)");
      if (!cost_ok((*list)[i].cost)) errors.push_back(item + ".cost must be non-negative");
    }
  } else {
    const auto& g = std::get<TaskGenerator>(s.tasks);
    if (g.count < 1) errors.push_back("tasks.count must be at least 1");
    check_dist(errors, g.difficulty, "tasks.difficulty", difficulty_ok, "[0,1)");
    check_dist(errors, g.cost, "tasks.cost", cost_ok, "[0,inf)");
  }
  return errors;
}

Scenario load_scenario(std::string_view text) {
  Scenario s = parse_scenario(text);
  if (auto errors = validate(s); !errors.empty()) throw ScenarioError(std::move(errors));
  return s;
}

std::string emit_scenario(const Scenario& s) {
  ordered_json doc;
  doc["form"] = to_string(s.form);
  doc["ticks"] = s.ticks;
  doc["update_period"] = s.update_period;
  doc["completion_threshold"] = s.completion_threshold;
  doc["noise_epsilon"] = s.noise_epsilon;
  ordered_json filter;
  filter["policy"] = to_string(s.filter.kind);
  if (s.filter.kind == FilterKind::Threshold) filter["threshold"] = s.filter.threshold;
  doc["filter"] = filter;
  doc["early_stop"] = s.early_stop;

  if (const auto* list = std::get_if<std::vector<AgentSpec>>(&s.agents)) {
    doc["agents"] = ordered_json::array();
    for (const auto& a : *list) {
      doc["agents"].push_back({{"motivation", a.motivation}, {"success_rate", a.success_rate}});
    }
  } else {
    const auto& g = std::get<AgentGenerator>(s.agents);
    ordered_json gen;
    gen["count"] = g.count;
    gen["motivation"] = dist_json(g.motivation);
    gen["success_rate"] = dist_json(g.success_rate);
    doc["agents"] = gen;
  }

  if (const auto* list = std::get_if<std::vector<TaskSpec>>(&s.tasks)) {
    doc["tasks"] = ordered_json::array();
    for (const auto& t : *list) {
      doc["tasks"].push_back({{"difficulty", t.difficulty}, {"cost", t.cost}});
    }
  } else {
    const auto& g = std::get<TaskGenerator>(s.tasks);
    ordered_json gen;
    gen["count"] = g.count;
    gen["difficulty"] = dist_json(g.difficulty);
    gen["cost"] = dist_json(g.cost);
    doc["tasks"] = gen;
  }
  return doc.dump(2) + "\n";
}

SimState materialize(const Scenario& s, std::uint64_t seed, bool collect_trace) {
  if (auto errors = validate(s); !errors.empty()) throw ScenarioError(std::move(errors));

  SimState state;
  state.seed = seed;
  state.rng = Rng(seed);
  state.tick_budget = s.ticks;
  state.early_stop = s.early_stop;
  state.work = WorkParams{s.noise_epsilon};

  if (const auto* list = std::get_if<std::vector<AgentSpec>>(&s.agents)) {
    state.agents.reserve(list->size());
    for (const auto& a : *list) {
      state.agents.push_back(make_agent(state.agents.size(), a.motivation, a.success_rate));
    }
  } else {
    const auto& g = std::get<AgentGenerator>(s.agents);
    state.agents.reserve(g.count);
    for (std::uint64_t i = 0; i < g.count; ++i) {
      const double motivation = sample(g.motivation, state.rng);
      const double success_rate = sample(g.success_rate, state.rng);
      state.agents.push_back(make_agent(i, motivation, success_rate));
    }
  }

  std::vector<Task> tasks;
  if (const auto* list = std::get_if<std::vector<TaskSpec>>(&s.tasks)) {
    tasks.reserve(list->size());
    for (const auto& t : *list) tasks.push_back(make_task(tasks.size(), t.difficulty, t.cost));
  } else {
    const auto& g = std::get<TaskGenerator>(s.tasks);
    tasks.reserve(g.count);
    for (std::uint64_t i = 0; i < g.count; ++i) {
      const double difficulty = sample(g.difficulty, state.rng);
      const double cost = sample(g.cost, state.rng);
      tasks.push_back(make_task(i, difficulty, cost));
    }
  }

  state.it.form = s.form;
  state.it.update_period = s.update_period;
  state.it.filter = s.filter;
  state.registered_complete.assign(tasks.size(), false);
  state.it.pool = TaskPool(std::move(tasks), s.completion_threshold);
  if (collect_trace) state.trace.emplace();
  return state;
}

}  // namespace crowdsim
