#include <algorithm>

#include "crowdsim/scenario.hpp"
#include "doctest.h"
#include "support/fuzz.hpp"

using namespace crowdsim;

namespace {

const char* kMinimal = R"({
  "form": "episodic",
  "ticks": 10,
  "update_period": 2,
  "completion_threshold": 0.9,
  "agents": [{"motivation": 0.5, "success_rate": 0.7}],
  "tasks": [{"difficulty": 0.2, "cost": 1.5}]
})";

std::vector<std::string> parse_errors(std::string_view text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.errors();
  }
  return {};
}

bool mentions(const std::vector<std::string>& errors, std::string_view needle) {
  return std::any_of(errors.begin(), errors.end(),
                     [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

std::string with(std::string_view replace, std::string_view by) {
  std::string doc = kMinimal;
  const auto pos = doc.find(replace);
  REQUIRE(pos != std::string::npos);
  doc.replace(pos, replace.size(), by);
  return doc;
}

}  // namespace

TEST_CASE("parse minimal document with defaults") {
  const Scenario s = parse_scenario(kMinimal);
  CHECK(s.form == ItForm::Episodic);
  CHECK(s.ticks == 10);
  CHECK(s.update_period == 2);
  CHECK(s.completion_threshold == 0.9);
  CHECK(s.noise_epsilon == 0.0);
  CHECK(s.filter == FilterPolicy::pass_through());
  CHECK(s.early_stop);
  REQUIRE(std::holds_alternative<std::vector<AgentSpec>>(s.agents));
  CHECK(std::get<std::vector<AgentSpec>>(s.agents) == std::vector<AgentSpec>{{0.5, 0.7}});
  CHECK(std::get<std::vector<TaskSpec>>(s.tasks) == std::vector<TaskSpec>{{0.2, 1.5}});
  CHECK(validate(s).empty());
}

TEST_CASE("parse rejects a misspelled form and names it") {
  const auto errors = parse_errors(with(R"("form": "episodic")", R"("form": "episodc")"));
  REQUIRE(errors.size() == 1);
  CHECK(errors[0].rfind("form:", 0) == 0);
  CHECK(mentions(errors, "\"episodc\""));
}

TEST_CASE("agents given both as list and as generator") {
  const auto dup = parse_errors(with(R"("tasks")",
                                     R"("agents": {"count": 2, "motivation": {"constant": 1},
                                        "success_rate": {"constant": 1}}, "tasks")"));
  CHECK(mentions(dup, "agents: exactly one of list or generator"));

  const auto nested = parse_errors(with(R"("agents": [{"motivation": 0.5, "success_rate": 0.7}])",
                                        R"("agents": {"list": [], "count": 1,
                                           "motivation": {"constant": 1}, "success_rate": {"constant": 1}})"));
  CHECK(mentions(nested, "agents: exactly one of list or generator"));
}

TEST_CASE("parse collects every structural error") {
  const auto errors = parse_errors(R"({
    "form": 3, "ticks": -1, "update_period": 1.5, "completion_threshold": "high",
    "noise_epsilon": null, "early_stop": "yes", "colour": "blue",
    "filter": {"policy": "threshold"},
    "agents": [{"motivation": 0.5}],
    "tasks": {"count": 2, "difficulty": {"gaussian": 1}, "cost": {"uniform": [1]}}
  })");
  for (const char* field : {"form:", "ticks:", "update_period:", "completion_threshold:",
                            "noise_epsilon:", "early_stop:", "colour: unknown key",
                            "filter.threshold:", "agents[0].success_rate: missing",
                            "tasks.difficulty.gaussian:", "tasks.cost.uniform:"}) {
    CAPTURE(field);
    CHECK(mentions(errors, field));
  }
}

TEST_CASE("missing required keys are all reported") {
  const auto errors = parse_errors("{}");
  for (const char* field : {"form", "ticks", "update_period", "completion_threshold", "agents", "tasks"}) {
    CHECK(mentions(errors, std::string(field) + ": missing required key"));
  }
}

TEST_CASE("syntax errors carry a position") {
  const auto errors = parse_errors("{\"form\": \"episodic\",,}");
  REQUIRE(errors.size() == 1);
  CHECK(mentions(errors, "syntax error at byte"));
  CHECK(mentions(errors, "column"));

  CHECK(mentions(parse_errors(R"({"completion_threshold": NaN})"), "syntax error"));
  CHECK(mentions(parse_errors("[1, 2]"), "expected a JSON object"));
}

TEST_CASE("filter parsing") {
  CHECK(parse_scenario(with(R"("tasks")", R"("filter": {"policy": "threshold", "threshold": 0.25}, "tasks")"))
            .filter == FilterPolicy::threshold_at(0.25));
  CHECK(parse_scenario(with(R"("tasks")", R"("filter": {"policy": "best_per_task"}, "tasks")")).filter ==
        FilterPolicy::best_per_task());
  CHECK(mentions(parse_errors(with(R"("tasks")",
                                   R"("filter": {"policy": "pass_through", "threshold": 0.2}, "tasks")")),
                 "filter.threshold: only allowed"));
  CHECK(mentions(parse_errors(with(R"("tasks")", R"("filter": {"policy": "median"}, "tasks")")),
                 "filter.policy: unknown value"));
}

TEST_CASE("validate examples") {
  Scenario s = parse_scenario(kMinimal);
  CHECK(validate(s).empty());

  s.completion_threshold = 0.0;
  const auto theta = validate(s);
  REQUIRE(theta.size() == 1);
  CHECK(theta[0] == "completion_threshold must be in (0,1]");

  s = parse_scenario(kMinimal);
  s.tasks = TaskGenerator{3, Dist::uniform(0.0, 1.0), Dist::constant(1.0)};
  CHECK(mentions(validate(s), "tasks.difficulty.uniform upper bound"));
}

TEST_CASE("validate reports every violation") {
  Scenario s = parse_scenario(kMinimal);
  s.update_period = 0;
  s.completion_threshold = 1.5;
  s.noise_epsilon = 1.0;
  s.filter = FilterPolicy::threshold_at(-0.1);
  s.agents = AgentGenerator{0, Dist::uniform(0.8, 0.2), Dist::constant(2.0)};
  s.tasks = std::vector<TaskSpec>{{1.0, -1.0}};
  const auto errors = validate(s);
  for (const char* field : {"update_period", "completion_threshold", "noise_epsilon",
                            "filter.threshold", "agents.count", "agents.motivation.uniform requires lo <= hi",
                            "agents.success_rate.constant", "tasks[0].difficulty", "tasks[0].cost"}) {
    CAPTURE(field);
    CHECK(mentions(errors, field));
  }
  s.agents = std::vector<AgentSpec>{};
  s.tasks = std::vector<TaskSpec>{};
  CHECK(mentions(validate(s), "at least one agent"));
  CHECK(mentions(validate(s), "at least one task"));
}

TEST_CASE("materialize examples") {
  SUBCASE("explicit lists consume no draws") {
    const Scenario s = parse_scenario(kMinimal);
    const SimState a = materialize(s, 1);
    const SimState b = materialize(s, 999);
    CHECK(a.agents == b.agents);
    CHECK(a.it.pool.tasks() == b.it.pool.tasks());
    CHECK(a.rng.draws() == 0);
  }
  SUBCASE("constant generator") {
    Scenario s = parse_scenario(kMinimal);
    s.agents = AgentGenerator{3, Dist::constant(0.5), Dist::constant(0.25)};
    const SimState st = materialize(s, 4);
    REQUIRE(st.agents.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(st.agents[i].id == i);
      CHECK(st.agents[i].motivation == 0.5);
    }
    CHECK(st.rng.draws() == 0);
  }
  SUBCASE("uniform generator is seed-deterministic") {
    Scenario s = parse_scenario(kMinimal);
    s.agents = AgentGenerator{50, Dist::constant(1.0), Dist::uniform(0.2, 0.8)};
    const SimState a = materialize(s, 12);
    const SimState b = materialize(s, 12);
    CHECK(a.agents == b.agents);
    for (const Agent& ag : a.agents) {
      CHECK(ag.success_rate >= 0.2);
      CHECK(ag.success_rate <= 0.8);
    }
    CHECK(materialize(s, 13).agents != a.agents);
  }
  SUBCASE("draws agents before tasks, fields in declaration order") {
    Scenario s = parse_scenario(kMinimal);
    s.agents = AgentGenerator{2, Dist::uniform(0.0, 1.0), Dist::uniform(0.0, 0.5)};
    s.tasks = TaskGenerator{2, Dist::uniform(0.0, 0.5), Dist::uniform(1.0, 3.0)};
    const SimState st = materialize(s, 77);
    Rng oracle(77);
    for (int i = 0; i < 2; ++i) {
      CHECK(st.agents[i].motivation == oracle.uniform(0.0, 1.0));
      CHECK(st.agents[i].success_rate == oracle.uniform(0.0, 0.5));
    }
    for (int i = 0; i < 2; ++i) {
      CHECK(st.it.pool.at(i).difficulty == oracle.uniform(0.0, 0.5));
      CHECK(st.it.pool.at(i).cost == oracle.uniform(1.0, 3.0));
    }
  }
  SUBCASE("invalid scenario is refused") {
    Scenario s = parse_scenario(kMinimal);
    s.completion_threshold = 0.0;
    CHECK_THROWS_AS(materialize(s, 1), ScenarioError);
  }
}

TEST_CASE("draw accounting: one draw per uniform generated field") {
  testing::ScenarioFuzzer fuzz(606);
  for (int i = 0; i < 500; ++i) {
    const Scenario s = fuzz.next();
    std::uint64_t expected = 0;
    if (const auto* g = std::get_if<AgentGenerator>(&s.agents)) {
      expected += g->count * ((g->motivation.kind == Dist::Kind::Uniform) +
                              (g->success_rate.kind == Dist::Kind::Uniform));
    }
    if (const auto* g = std::get_if<TaskGenerator>(&s.tasks)) {
      expected += g->count * ((g->difficulty.kind == Dist::Kind::Uniform) +
                              (g->cost.kind == Dist::Kind::Uniform));
    }
    REQUIRE(materialize(s, i).rng.draws() == expected);
  }
}

TEST_CASE("emit/parse round-trip on fuzzed scenarios") {
  testing::ScenarioFuzzer fuzz(1001);
  for (int i = 0; i < 500; ++i) {
    const Scenario s = fuzz.next();
    const std::string text = emit_scenario(s);
    INFO(text);
    REQUIRE(parse_scenario(text) == s);
    REQUIRE(emit_scenario(parse_scenario(text)) == text);
  }
}

TEST_CASE("anything that validates materializes into legal values") {
  testing::ScenarioFuzzer fuzz(2002);
  for (int i = 0; i < 500; ++i) {
    const Scenario s = fuzz.next();
    REQUIRE(validate(s).empty());
    const SimState st = materialize(s, i);
    REQUIRE_FALSE(st.agents.empty());
    REQUIRE_FALSE(st.it.pool.empty());
    for (std::size_t k = 0; k < st.agents.size(); ++k) {
      const Agent& a = st.agents[k];
      REQUIRE(a.id == k);
      REQUIRE((a.motivation >= 0.0 && a.motivation <= 1.0));
      REQUIRE((a.success_rate >= 0.0 && a.success_rate <= 1.0));
    }
    for (std::size_t k = 0; k < st.it.pool.size(); ++k) {
      const Task& t = st.it.pool.at(k);
      REQUIRE(t.signifier == k);
      REQUIRE((t.difficulty >= 0.0 && t.difficulty < 1.0));
      REQUIRE(t.cost >= 0.0);
      REQUIRE(t.completion == 0.0);
    }
  }
}
