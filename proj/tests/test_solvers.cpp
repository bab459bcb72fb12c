#include <doctest.h>

#include <cmath>

#include "qnls/constants.hpp"
#include "qnls/corpus.hpp"
#include "qnls/solvers.hpp"

using namespace qnls;

namespace {

ProblemParams local_params() {
  ProblemParams p;
  p.q = 2.5;
  p.tau = 1.0;
  p.mu = 1e-3;
  p.theta = default_theta(3);
  p.mass = 0.5 * *thresholds(p).c0;
  return p;
}

const GridPtr& default_grid() {
  static const GridPtr g = make_grid(GridSpec{});
  return g;
}

}  // namespace

TEST_CASE("status names round-trip") {
  for (Status s : {Status::Converged, Status::BoundaryHit, Status::NoSolution, Status::MaxIter})
    CHECK(status_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(status_from_string("Done"), std::invalid_argument);
}

TEST_CASE("solve config validation") {
  SolveConfig c;
  CHECK_NOTHROW(c.validate());
  c.grad_tol = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.mu_schedule = {1e-2, 1e-2};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.step_shrink = 1.5;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("pipeline selection by exponent") {
  ProblemParams p;
  p.q = 2.5;
  CHECK(pipeline_for(p) == Pipeline::LocalMin);
  p.q = 6.0;
  CHECK(pipeline_for(p) == Pipeline::GroundState);
  p.q = 4.0;
  CHECK_THROWS_AS(pipeline_for(p), std::invalid_argument);
}

TEST_CASE("initial fields carry the requested mass") {
  const auto p = local_params();
  InitialGuess g;
  CHECK(mass(initial_field(p, default_grid(), g)) == doctest::Approx(p.mass).epsilon(1e-12));
  g.family = InitialGuess::Family::TruncatedBubble;
  g.eps = 1e-2;
  CHECK(mass(initial_field(p, default_grid(), g)) == doctest::Approx(p.mass).epsilon(1e-12));
}

TEST_CASE("local minimiser in the subcritical regime") {
  const auto p = local_params();
  const auto r = local_minimize(p, default_grid(), SolveConfig{});
  REQUIRE(r.status == Status::Converged);
  CHECK(r.level < 0.0);
  CHECK(r.pohozaev_residual < 1e-3);
  CHECK(r.lambda_identity > 0.0);
  CHECK(std::abs(r.lambda_weak - r.lambda_identity) < 1e-2 * std::abs(r.lambda_identity));
  CHECK(r.mass == doctest::Approx(p.mass).epsilon(1e-10));
  CHECK(r.diagnostics.xi_final < r.diagnostics.rho0);
  CHECK_FALSE(r.diagnostics.exploratory);
  // Frozen from a converged run; guards against silent changes in the discretisation.
  CHECK(r.level == doctest::Approx(-0.0333318562).epsilon(1e-6));
  CHECK(r.lambda_weak == doctest::Approx(0.0828172807).epsilon(1e-6));

  SUBCASE("a warm restart is already converged") {
    const auto again = local_minimize(p, default_grid(), SolveConfig{}, &r.profile);
    CHECK(again.status == Status::Converged);
    CHECK(again.iterations <= 1);
    CHECK(again.level == doctest::Approx(r.level).epsilon(1e-9));
  }
}

TEST_CASE("a tiny rho0 turns the local solve into a boundary hit") {
  const auto p = local_params();
  SolveConfig c;
  c.rho0 = 1e-3;
  CHECK(local_minimize(p, default_grid(), c).status == Status::BoundaryHit);
}

TEST_CASE("local solve is deterministic") {
  const auto p = local_params();
  SolveConfig c;
  c.max_iter = 60;
  const auto a = local_minimize(p, default_grid(), c);
  const auto b = local_minimize(p, default_grid(), c);
  CHECK(a.profile.values == b.profile.values);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("ground state at large coupling sits on its fiber maximum") {
  ProblemParams p;
  p.q = 6.0;
  p.tau = 100.0;
  p.mu = 1e-3;
  p.theta = default_theta(3);
  p.mass = 1.0;
  const auto r = ground_state_level(p, default_grid(), SolveConfig{});
  REQUIRE(r.status == Status::Converged);
  CHECK(r.diagnostics.fiber_s == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.diagnostics.fiber_critical_points == 1);
  CHECK(r.level > 0.0);
  CHECK(r.level < thresholds(p).level_threshold);
  CHECK(r.lambda_identity > 0.0);
  CHECK(r.pohozaev_residual < 1e-8);
}

TEST_CASE("mu continuation warm-starts along a decreasing schedule") {
  const auto p = local_params();
  SolveConfig c;
  c.mu_schedule = {1e-2, 5e-3, 2.5e-3};
  const auto stages = mu_continuation(p, default_grid(), c);
  REQUIRE(stages.size() == 3);
  for (std::size_t i = 0; i < stages.size(); ++i) {
    CHECK(stages[i].status == Status::Converged);
    CHECK(stages[i].params.mu == c.mu_schedule[i]);
  }
  const auto theta_term = [](const SolveReport& r) { return r.params.mu * r.terms.theta_grad; };
  CHECK(theta_term(stages[1]) < theta_term(stages[0]));
  CHECK(theta_term(stages[2]) < theta_term(stages[1]));
}

TEST_CASE("nonexistence identity is non-positive without the focusing term") {
  ProblemParams p;
  p.tau = -1.0;
  p.q = 3.0;
  const auto corpus = random_corpus(default_grid(), CorpusSpec{20});
  for (const auto& u : corpus) CHECK(nonexistence_rhs(u, p) <= 0.0);
  const auto cert = nonexistence_check(p, corpus, {});
  CHECK(cert.identity_nonpositive);
  CHECK(cert.solvers_consistent);
  CHECK(cert.fields.size() == corpus.size());

  SolveReport fake;
  fake.status = Status::Converged;
  fake.lambda_identity = 0.3;
  CHECK_FALSE(nonexistence_check(p, corpus, {fake}).holds());

  ProblemParams focusing = p;
  focusing.tau = 1.0;
  CHECK_THROWS_AS(nonexistence_check(focusing, corpus, {}), std::invalid_argument);
}

TEST_CASE("defocusing local solve never reports a positive multiplier") {
  ProblemParams p;
  p.q = 2.5;
  p.tau = -1.0;
  p.mass = 1.0;
  const auto r = local_minimize(p, default_grid(), SolveConfig{});
  CHECK(r.status != Status::Converged);
  CHECK((r.status == Status::NoSolution || r.status == Status::BoundaryHit));
}
