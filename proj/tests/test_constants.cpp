#include <doctest.h>

#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "qnls/constants.hpp"
#include "qnls/functionals.hpp"
#include "qnls/scaling.hpp"
#include "qnls/shooting.hpp"

using namespace qnls;

TEST_CASE("Sobolev constant: Romberg estimate against the closed form") {
  // 3 (pi/2)^{4/3} is the N = 3 value; the general closed form is the oracle.
  CHECK(sobolev_constant_closed_form(3) == doctest::Approx(3.0 * std::pow(M_PI / 2.0, 4.0 / 3.0)).epsilon(1e-14));
  for (int N : {3, 4, 5, 6}) {
    const auto est = sobolev_estimate(N);
    CAPTURE(N);
    CHECK(est.value == doctest::Approx(sobolev_constant_closed_form(N)).epsilon(1e-10));
    CHECK(est.trapezoid.size() == est.extrapolated.size());
  }
  CHECK(sobolev_constant(3) == doctest::Approx(5.47790408953133).epsilon(1e-12));
}

TEST_CASE("quasilinear extremal at p = 3, N = 3: exact compact profile") {
  // -Delta u + 1 = u^{1/2} is solved by u = (R^2 - r^2)^2 / 400 with R^2 = 50,
  // so the height is 6.25 and the support sqrt(50).
  const auto ex = gn_extremal(3.0, 3);
  CHECK(ex.shoot_param == doctest::Approx(6.25).epsilon(1e-8));
  CHECK(ex.support == doctest::Approx(std::sqrt(50.0)).epsilon(1e-7));
  CHECK(ex.ode_residual < 1e-5);
  // |Q|_1 = 4 pi int_0^R (R^2 - r^2)^2 r^2 / 400 dr = 4 pi (8/105) R^7 / 400.
  const double R = std::sqrt(50.0);
  CHECK(ex.l1_norm == doctest::Approx(4.0 * M_PI * 8.0 / 105.0 * std::pow(R, 7) / 400.0).epsilon(1e-7));
}

TEST_CASE("quasilinear extremal at p = 4, N = 3: support at the first root of tan x = x") {
  // -Delta u + 1 = u is solved by u = 1 - R sin(r) / (r sin R); u'(R) = 0 exactly when tan R = R.
  const double root = boost::math::tools::newton_raphson_iterate(
      [](double x) { return std::make_pair(std::tan(x) - x, 1.0 / (std::cos(x) * std::cos(x)) - 1.0); }, 4.49, 4.4,
      4.6, 50);
  const auto ex = gn_extremal(4.0, 3);
  CHECK(ex.support == doctest::Approx(root).epsilon(1e-7));
  CHECK(ex.shoot_param == doctest::Approx(1.0 - root / std::sin(root)).epsilon(1e-7));
}

TEST_CASE("GN prefactor makes the inequality scale invariant") {
  // Ratio at sqrt(Q_p) is one; at the same profile rescaled in amplitude and
  // space the ratio must not change.
  for (auto [p, N] : {std::pair{3.0, 3}, {4.0, 3}, {4.0, 4}}) {
    auto gN = make_grid(GridSpec{N, 50.0, 2000, 1.003});
    const double c2 = gn_constant_quasi(p, N);
    const auto qp = gn_extremal(p, N).profile(gN);
    RadialField root = qp;
    for (auto& v : root.values) v = std::sqrt(std::max(v, 0.0));
    const double ratio = gn_ratio(root, p, c2);
    CAPTURE(p);
    CAPTURE(N);
    CHECK(ratio == doctest::Approx(1.0).epsilon(1e-4));
    RadialField scaled = dilate(root, 1.7);
    for (auto& v : scaled.values) v *= 0.3;
    CHECK(gn_ratio(scaled, p, c2) == doctest::Approx(ratio).epsilon(1e-4));
  }
}

TEST_CASE("frozen constants for N = 3, q = 2.5, tau = 1") {
  ProblemParams p;
  p.q = 2.5;
  const auto t = thresholds(p);
  REQUIRE(t.c0);
  REQUIRE(t.rho0);
  CHECK(*t.C2_q == doctest::Approx(0.7752092209).epsilon(1e-8));
  CHECK(*t.c0 == doctest::Approx(2.253372716).epsilon(1e-8));
  CHECK(*t.rho0 == doctest::Approx(2.143849564).epsilon(1e-8));
  CHECK(t.level_threshold == doctest::Approx(std::pow(5.47790408953133, 1.5) / 6.0).epsilon(1e-12));
  CHECK(t.level_threshold == doctest::Approx(2.1368320).epsilon(1e-7));
  CHECK(t.alphas_in_range);
  CHECK_FALSE(t.cbar2);
  CHECK_FALSE(t.notes.empty());
}

TEST_CASE("landscape exponents and D1, q_N") {
  const auto e = landscape_exponents(3, 2.5);
  CHECK(e.alpha0 == doctest::Approx(-0.85));
  CHECK(e.alpha1 == doctest::Approx(0.95));
  CHECK(e.alpha2 == doctest::Approx(2.0));
  CHECK(q_N(3) == doctest::Approx(10.0));
  CHECK(D1(3) == doctest::Approx(13.0 / 30.0));
  CHECK(D1(4) == doctest::Approx(20.0 / 48.0));
}

TEST_CASE("landscape maximiser: closed form against the numerical maximum") {
  ProblemParams p;
  p.q = 2.5;
  const auto f = make_landscape(p);
  for (double c : {0.5, 1.0, 2.0}) {
    const auto m = f_max(f, c);
    CHECK(m.rho == doctest::Approx(f.rho_c(c)).epsilon(1e-6));
    CHECK(m.value == doctest::Approx(f(c, f.rho_c(c))).epsilon(1e-10));
  }
}

TEST_CASE("threshold trichotomy around c0") {
  ProblemParams p;
  p.q = 2.5;
  const auto t = thresholds(p);
  const auto f = make_landscape(p);
  CHECK(f_max(f, 0.5 * *t.c0).value > 1e-3);
  CHECK(std::abs(f_max(f, *t.c0).value) < 1e-10);
  CHECK(f_max(f, 2.0 * *t.c0).value < -1e-3);
  // rho0 is where the maximum sits at c0.
  CHECK(f_max(f, *t.c0).rho == doctest::Approx(*t.rho0).epsilon(1e-6));
}

TEST_CASE("classic GN constant: endpoints and the decaying ground state") {
  CHECK(gn_constant_classic(2.0, 3) == doctest::Approx(1.0));
  CHECK(gn_constant_classic(6.0, 3) == doctest::Approx(1.0 / std::sqrt(sobolev_constant(3))).epsilon(1e-10));
  // At the ground state the inequality is an equality.
  auto g = make_grid(GridSpec{3, 40.0, 2000, 1.003});
  const double q = 3.0;
  const auto W = classic_ground_state(q, 3).sample(g);
  const auto t = term_integrals(W, q, 2.7);
  const double gam = gamma_exponent(3, q);
  const double rhs = gn_constant_classic(q, 3) * std::pow(t.grad2, gam / 2.0) * std::pow(t.mass, (1.0 - gam) / 2.0);
  CHECK(std::pow(t.lq, 1.0 / q) == doctest::Approx(rhs).epsilon(1e-4));
}

TEST_CASE("shooting rejects exponents without a ground state") {
  CHECK_THROWS(gn_extremal(2.0, 3));
  CHECK_THROWS(classic_ground_state(7.0, 3));
}
