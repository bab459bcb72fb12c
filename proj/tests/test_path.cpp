#include <doctest.h>

#include <cmath>

#include "qnls/constants.hpp"
#include "qnls/solvers.hpp"

using namespace qnls;

TEST_CASE("scalar mountain pass: max of t^4/4 - t^{2*2^*}/(2*2^*) is 1/(2N)") {
  CHECK(scalar_path_max(3) == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  CHECK(scalar_path_max(4) == doctest::Approx(1.0 / 8.0).epsilon(1e-10));
  CHECK(scalar_path_max(5) == doctest::Approx(1.0 / 10.0).epsilon(1e-10));
}

namespace {
ProblemParams gs_params(double tau) {
  ProblemParams p;
  p.q = 6.0;
  p.tau = tau;
  p.mu = 1e-3;
  p.theta = default_theta(3);
  p.mass = 1.0;
  return p;
}
}  // namespace

TEST_CASE("dilated truncated-bubble path") {
  const auto p = gs_params(1.0);
  const auto b = path_energy_bound(p, nullptr, PathFamily::DilatedTruncated);
  CHECK(b.family == PathFamily::DilatedTruncated);
  CHECK(b.endpoint_ok);
  CHECK(b.endpoint_value < 0.0);
  CHECK(b.level_bound > 0.0);
  CHECK(b.threshold == doctest::Approx(thresholds(p).level_threshold));
  CHECK(b.alpha == doctest::Approx(1.0 / 16.0));
  CHECK(b.below_threshold == (b.level_bound < b.threshold));
  REQUIRE_FALSE(b.values.empty());
  double sampled = -INFINITY;
  for (double v : b.values) sampled = std::max(sampled, v);
  CHECK(b.level_bound >= sampled - 1e-12);
}

TEST_CASE("the truncated path bound decreases as the bubble concentrates") {
  const auto p = gs_params(1.0);
  PathOptions o;
  o.eps = 1e-3;
  const double coarse = path_energy_bound(p, nullptr, PathFamily::DilatedTruncated, o).level_bound;
  o.eps = 1e-5;
  const double fine = path_energy_bound(p, nullptr, PathFamily::DilatedTruncated, o).level_bound;
  CHECK(fine < coarse);
}

TEST_CASE("W path starts at the local minimiser") {
  ProblemParams p;
  p.q = 2.5;
  p.tau = 1.0;
  p.mu = 1e-3;
  p.theta = default_theta(3);
  p.mass = 0.5 * *thresholds(p).c0;
  const auto base = local_minimize(p, make_grid(GridSpec{}), SolveConfig{});
  REQUIRE(base.status == Status::Converged);
  PathOptions o;
  o.eps = 1e-2;
  const auto b = path_energy_bound(p, &base.profile, PathFamily::WEpsT, o);
  CHECK(b.base_level == doctest::Approx(base.level).epsilon(1e-10));
  CHECK(b.values.front() == doctest::Approx(base.level).epsilon(1e-6));
  CHECK(b.endpoint_ok);
  CHECK(b.threshold == doctest::Approx(base.level + thresholds(p).level_threshold));
  CHECK_THROWS_AS(path_energy_bound(p, nullptr, PathFamily::WEpsT, o), std::invalid_argument);
}
