#include <doctest.h>

#include "app.hpp"
#include "config.hpp"
#include "qnls/constants.hpp"

using namespace qnls;
using namespace qnls::app;

TEST_CASE("comments are allowed in config files") {
  const auto j = load_config_text(R"({
    // dimension and exponent
    "problem": {"dim": 3, "q": 3.0 /* subcritical */}
  })");
  const auto c = parse_run_config(j);
  CHECK(c.problem.q == 3.0);
  CHECK(c.problem.theta == doctest::Approx(default_theta(3)));
  CHECK_THROWS_AS(load_config_text("{ nope"), std::invalid_argument);
}

TEST_CASE("mass can be given relative to c0") {
  const auto c = parse_run_config(load_config_text(R"({"problem": {"q": 2.5, "mass_over_c0": 0.5}})"));
  CHECK(c.problem.mass == doctest::Approx(0.5 * 2.253372716).epsilon(1e-8));
  CHECK_THROWS_AS(parse_run_config(load_config_text(R"({"problem": {"mass": 1, "mass_over_c0": 0.5}})")),
                  std::invalid_argument);
}

TEST_CASE("unknown keys and bad values are validation errors") {
  CHECK_THROWS_AS(parse_run_config(load_config_text(R"({"problme": {}})")), std::invalid_argument);
  CHECK_THROWS_AS(parse_run_config(load_config_text(R"({"grid": {"n_nodes": 2}})")), std::invalid_argument);
  CHECK_THROWS_AS(parse_run_config(load_config_text(R"({"sweep": {"mass": [1, -1]}})")), std::invalid_argument);
  CHECK_THROWS_AS(parse_run_config(load_config_text(R"({"problem": {"theta": 3.5}})")), std::invalid_argument);
  CHECK_THROWS_AS(parse_run_config(load_config_text(R"({"jobs": 0})")), std::invalid_argument);
}

TEST_CASE("environment overrides use double underscores for nesting") {
  auto j = load_config_text(R"({"problem": {"q": 2.5}})");
  apply_env_overrides(j, {{"QNLS_PROBLEM__TAU", "-1"},
                          {"QNLS_SOLVE__GUESS__FAMILY", "truncated_bubble"},
                          {"QNLS_SWEEP__MASS", "[0.5, 1]"},
                          {"OTHER_VAR", "ignored"}});
  const auto c = parse_run_config(j);
  CHECK(c.problem.tau == -1.0);
  CHECK(c.problem.q == 2.5);
  CHECK(c.solve.guess.family == InitialGuess::Family::TruncatedBubble);
  CHECK(c.sweep.mass == std::vector<double>{0.5, 1.0});
}

TEST_CASE("config hash ignores output location and job count") {
  auto a = parse_run_config(load_config_text("{}"));
  auto b = a;
  b.out_dir = "/elsewhere";
  b.jobs = 8;
  CHECK(config_hash(a, "solve-min") == config_hash(b, "solve-min"));
  CHECK(config_hash(a, "solve-min") != config_hash(a, "solve-gs"));
  b.seed = 1;
  CHECK(config_hash(a, "solve-min") != config_hash(b, "solve-min"));
  CHECK(config_hash(a, "constants").size() == 12);
}

TEST_CASE("every documented subcommand is registered") {
  const auto& s = subcommands();
  for (const char* name : {"constants", "bubbles", "solve-min", "solve-gs", "continuation", "path-bound",
                           "nonexistence", "verify", "sweep"})
    CHECK(std::find(s.begin(), s.end(), name) != s.end());
}

TEST_CASE("shipped example configs parse and validate") {
  for (const char* name : {"local_min", "ground_state", "sweep", "continuation"}) {
    CAPTURE(name);
    CHECK_NOTHROW(parse_run_config(load_config_file(std::string(QNLS_CONFIG_DIR) + "/" + name + ".json")));
  }
}
