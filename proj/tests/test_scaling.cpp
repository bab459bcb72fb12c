#include <doctest.h>

#include <cmath>

#include "qnls/functionals.hpp"
#include "qnls/scaling.hpp"

using namespace qnls;

namespace {
ProblemParams base() {
  ProblemParams p;
  p.q = 2.5;
  p.tau = 1.0;
  p.mu = 1e-3;
  p.theta = default_theta(3);
  return p;
}

RadialField gaussian(const GridPtr& g, double amp, double width) {
  auto u = RadialField::from_function(g, [=](double r) { return amp * std::exp(-(r / width) * (r / width)); });
  u.values.back() = 0.0;
  return u;
}
}  // namespace

TEST_CASE("dilation preserves mass and scales every term by its exponent") {
  auto g = make_grid(GridSpec{});
  const auto p = base();
  const auto u = gaussian(g, 0.8, 3.0);
  const auto t = term_integrals(u, p.q, p.theta);
  const auto e = fiber_exponents(p);
  for (double s : {0.5, 2.0}) {
    const auto ts = term_integrals(dilate(u, s), p.q, p.theta);
    CAPTURE(s);
    CHECK(ts.mass == doctest::Approx(t.mass).epsilon(1e-6));
    CHECK(ts.theta_grad == doctest::Approx(std::pow(s, e[0]) * t.theta_grad).epsilon(1e-5));
    CHECK(ts.grad2 == doctest::Approx(std::pow(s, e[1]) * t.grad2).epsilon(1e-5));
    CHECK(ts.quasi == doctest::Approx(std::pow(s, e[2]) * t.quasi).epsilon(1e-5));
    CHECK(ts.lq == doctest::Approx(std::pow(s, e[3]) * t.lq).epsilon(1e-5));
    CHECK(ts.crit == doctest::Approx(std::pow(s, e[4]) * t.crit).epsilon(1e-5));
  }
}

TEST_CASE("fiber exponents") {
  const auto p = base();
  const auto e = fiber_exponents(p);
  CHECK(e[1] == 2.0);
  CHECK(e[2] == 5.0);
  CHECK(e[3] == doctest::Approx(0.75));
  CHECK(e[4] == doctest::Approx(15.0));  // N(2^* - 1) at N = 3
  CHECK(e[0] == doctest::Approx(p.theta * (1.0 + p.gamma_theta())));
}

TEST_CASE("fiber value and its Pohozaev derivative") {
  auto g = make_grid(GridSpec{});
  const auto p = base();
  const auto t = term_integrals(gaussian(g, 0.6, 3.0), p.q, p.theta);
  CHECK(fiber_value(t, p, 1.0) == doctest::Approx(breakdown_from_terms(t, p).total_I));
  for (double s : {0.3, 1.0, 4.0}) {
    const double h = 1e-6 * s;
    const double fd = s * (fiber_value(t, p, s + h) - fiber_value(t, p, s - h)) / (2.0 * h);
    CHECK(fiber_pohozaev(t, p, s) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("mass-subcritical fiber: local minimum, then the global maximum") {
  // For q < 2 + 4/N the fiber dips below zero before the critical term wins:
  // it has a local minimum then a global maximum, so two roots of Q.
  auto g = make_grid(GridSpec{});
  const auto p = base();
  const auto u = mass_project(gaussian(g, 1.0, 3.0), 1.0);
  const auto roots = fiber_roots(u, p);
  CHECK(roots.size() == 2);
  const auto fm = fiber_max(u, p);
  CHECK(fm.s > roots.front());
  CHECK(std::abs(fiber_pohozaev(term_integrals(u, p.q, p.theta), p, fm.s)) < 1e-5);
  CHECK(fm.s == doctest::Approx(roots.back()).epsilon(1e-6));
}

TEST_CASE("fiber profile samples agree with actual dilations") {
  auto g = make_grid(GridSpec{});
  const auto p = base();
  const auto u = gaussian(g, 0.6, 3.0);
  const auto prof = fiber_profile(u, p, {0.7, 1.0, 1.4});
  REQUIRE(prof.values.size() == 3);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(prof.values[k] == doctest::Approx(energy(dilate(u, prof.s_samples[k]), p).total_I).epsilon(1e-5));
}

TEST_CASE("a fiber without interior maximum raises BracketError") {
  // Pure positive terms: psi grows without bound, the maximum sits at the range end.
  auto g = make_grid(GridSpec{});
  auto p = base();
  p.tau = 0.0;
  const auto u = gaussian(g, 1e-3, 3.0);
  CHECK_THROWS_AS(fiber_max(u, p, SRange{1e-3, 1.0, 50}), BracketError);
}

TEST_CASE("mass projection") {
  auto g = make_grid(GridSpec{});
  const auto u = mass_project(gaussian(g, 2.0, 1.0), 3.5);
  CHECK(mass(u) == doctest::Approx(3.5).epsilon(1e-14));
}
