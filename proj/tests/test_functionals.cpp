#include <doctest.h>

#include <cmath>
#include <random>

#include "qnls/functionals.hpp"
#include "qnls/scaling.hpp"

using namespace qnls;

namespace {

ProblemParams params(double q = 2.5, double tau = 1.0, double mu = 1e-3) {
  ProblemParams p;
  p.q = q;
  p.tau = tau;
  p.mu = mu;
  p.theta = default_theta(3);
  return p;
}

RadialField gaussian(const GridPtr& g, double amp, double width) {
  auto u = RadialField::from_function(g, [=](double r) { return amp * std::exp(-(r / width) * (r / width)); });
  u.values.back() = 0.0;
  return u;
}

}  // namespace

TEST_CASE("parameter validation names the violated bound") {
  auto p = params();
  p.theta = 3.5;
  try {
    p.validate();
    FAIL("theta outside the window accepted");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("theta") != std::string::npos);
  }
  p = params(12.0);
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = params(2.0);
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = params();
  p.mass = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = params();
  p.mu = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("theta window and exponents") {
  CHECK(theta_lower(3) == doctest::Approx(2.4));
  CHECK(theta_upper(3) == doctest::Approx(3.0));
  CHECK(theta_lower(4) == doctest::Approx(8.0 / 3.0));
  CHECK(theta_upper(4) == doctest::Approx(10.0 / 3.0));
  CHECK(gamma_exponent(3, 2.5) == doctest::Approx(0.3));
  CHECK(mass_critical_classic(3) == doctest::Approx(10.0 / 3.0));
  CHECK(mass_critical_quasi(3) == doctest::Approx(16.0 / 3.0));
}

TEST_CASE("energy is the coefficient-weighted sum of the term integrals") {
  auto g = make_grid(GridSpec{});
  const auto p = params();
  const auto u = gaussian(g, 0.7, 3.0);
  const auto t = term_integrals(u, p.q, p.theta);
  const auto b = energy(u, p);
  CHECK(b.grad2 == doctest::Approx(0.5 * t.grad2));
  CHECK(b.quasi == doctest::Approx(t.quasi));
  CHECK(b.subq == doctest::Approx(p.tau / p.q * t.lq));
  CHECK(b.grad_theta == doctest::Approx(p.mu / p.theta * t.theta_grad));
  CHECK(b.total_I == doctest::Approx(b.grad_theta + b.grad2 + b.quasi - b.subq - b.crit));
  CHECK(mass(u) == doctest::Approx(t.mass));
}

TEST_CASE("Gaussian gradient energy against the closed form") {
  // u = exp(-r^2/w^2): |grad u|_2^2 = 3 (pi/2)^{3/2} w.
  auto g = make_grid(GridSpec{});
  const double w = 3.0;
  const auto t = term_integrals(gaussian(g, 1.0, w), 2.5, 2.7);
  CHECK(t.grad2 == doctest::Approx(3.0 * std::pow(M_PI / 2.0, 1.5) * w).epsilon(1e-5));
}

TEST_CASE("Pohozaev value equals the dilation derivative of the energy") {
  // Central difference of s -> I(dilate(u, s)) at s = 1 is an independent route to Q.
  auto g = make_grid(GridSpec{});
  const auto p = params(2.5, 1.0, 1e-2);
  const auto u = gaussian(g, 0.9, 2.5);
  const double h = 1e-4;
  const double fd = (energy(dilate(u, 1.0 + h), p).total_I - energy(dilate(u, 1.0 - h), p).total_I) / (2.0 * h);
  CHECK(pohozaev(u, p) == doctest::Approx(fd).epsilon(1e-4));
  CHECK(energy(u, p).total_Q == doctest::Approx(pohozaev(u, p)));
}

TEST_CASE("energy gradient matches central differences") {
  auto g = make_grid(GridSpec{3, 20.0, 400, 1.005});
  const auto p = params(3.0, 1.0, 1e-2);
  const auto u = gaussian(g, 1.2, 2.0);
  const auto grad = energy_gradient(u, p);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  RadialField v = RadialField::zeros(g);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = n01(rng) * std::exp(-g->r()[i] / 5.0);
  double analytic = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) analytic += grad[i] * v[i];
  const double h = 1e-6;
  RadialField up = u, dn = u;
  for (std::size_t i = 0; i < v.size(); ++i) {
    up[i] += h * v[i];
    dn[i] -= h * v[i];
  }
  const double fd = (energy(up, p).total_I - energy(dn, p).total_I) / (2.0 * h);
  CHECK(analytic == doctest::Approx(fd).epsilon(1e-6));
  CHECK(grad.back() == 0.0);
}

TEST_CASE("Pohozaev gradient matches central differences") {
  auto g = make_grid(GridSpec{3, 20.0, 400, 1.005});
  const auto p = params(2.5, 1.0, 1e-2);
  const auto u = gaussian(g, 1.0, 2.0);
  const auto grad = pohozaev_gradient(u, p);
  RadialField v = RadialField::zeros(g);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = std::cos(g->r()[i]) * std::exp(-g->r()[i] / 4.0);
  double analytic = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) analytic += grad[i] * v[i];
  const double h = 1e-6;
  RadialField up = u, dn = u;
  for (std::size_t i = 0; i < v.size(); ++i) {
    up[i] += h * v[i];
    dn[i] -= h * v[i];
  }
  CHECK(analytic == doctest::Approx((pohozaev(up, p) - pohozaev(dn, p)) / (2.0 * h)).epsilon(1e-6));
}

TEST_CASE("both multipliers follow their defining term combinations") {
  auto g = make_grid(GridSpec{});
  const auto p = params(2.5, 1.0, 1e-3);
  const auto u = gaussian(g, 0.5, 4.0);
  const auto t = term_integrals(u, p.q, p.theta);
  const double N = 3.0;
  const double gq = p.gamma_q();
  const double gt = p.gamma_theta();
  const double expected = (p.tau * (1.0 - 4.0 * gq / (N + 2.0)) * t.lq - (N - 2.0) / (N + 2.0) * t.grad2 +
                           p.mu * (4.0 * (1.0 + gt) / (N + 2.0) - 1.0) * t.theta_grad) /
                          t.mass;
  CHECK(multiplier_identity(t, p) == doctest::Approx(expected));
  // Weak multiplier: lambda c = -<I'(u), u> in integrated form.
  const double pairing = p.mu * t.theta_grad + t.grad2 + 4.0 * t.quasi - p.tau * t.lq - t.crit;
  CHECK(multiplier_weak(t, p) == doctest::Approx(-pairing / t.mass));
}

TEST_CASE("xi and normalized Pohozaev") {
  auto g = make_grid(GridSpec{});
  const auto p = params();
  const auto t = term_integrals(gaussian(g, 0.5, 4.0), p.q, p.theta);
  CHECK(xi_mu(t, p) == doctest::Approx(p.mu / p.theta * t.theta_grad + t.grad2 + t.quasi));
  const double q = breakdown_from_terms(t, p).total_Q;
  CHECK(normalized_pohozaev(t, p) == doctest::Approx(std::abs(q) / (t.grad2 + t.quasi + 1.0)));
}

TEST_CASE("CSV columns line up with the row") {
  EnergyBreakdown b;
  CHECK(EnergyBreakdown::csv_columns().size() == b.csv_row().size());
}
