#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qnls/grid.hpp"

using namespace qnls;

namespace {
GridPtr grid3(int n = 2000, double rmax = 50.0, double grading = 1.003) {
  return make_grid(GridSpec{3, rmax, n, grading});
}
}  // namespace

TEST_CASE("grid spec validation names the bound") {
  CHECK_THROWS_AS(GridSpec({2, 50.0, 2000, 1.003}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({3, -1.0, 2000, 1.003}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({3, 50.0, 2, 1.003}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({3, 50.0, 2000, 0.9}).validate(), std::invalid_argument);
  CHECK_NOTHROW(GridSpec{}.validate());
}

TEST_CASE("nodes span [0, r_max] and grow geometrically") {
  auto g = grid3();
  REQUIRE(g->size() == 2000);
  CHECK(g->r().front() == 0.0);
  CHECK(g->r().back() == doctest::Approx(50.0).epsilon(1e-14));
  const auto& h = g->h();
  for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] / h[i - 1] == doctest::Approx(1.003).epsilon(1e-9));
}

TEST_CASE("quadrature integrates low powers of r exactly") {
  for (int dim : {3, 4, 5}) {
    for (double grading : {1.0, 1.003, 1.01}) {
      auto g = make_grid(GridSpec{dim, 20.0, 301, grading});
      for (int k = 0; k <= 2; ++k) {
        const auto f = RadialField::from_function(g, [k](double r) { return std::pow(r, k); });
        const double exact = sphere_area(dim) * std::pow(20.0, k + dim) / (k + dim);
        CHECK(integrate(f) == doctest::Approx(exact).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("shell measures add up to the ball volume") {
  auto g = grid3(500, 10.0);
  double total = 0.0;
  for (double c : g->cell_measure()) total += c;
  CHECK(total == doctest::Approx(ball_volume(3, 10.0)).epsilon(1e-12));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * M_PI));
  CHECK(sphere_area(4) == doctest::Approx(2.0 * M_PI * M_PI));
}

TEST_CASE("Gaussian norms") {
  // |exp(-r^2)|_2^2 over R^3 is (pi/2)^{3/2}.
  auto g = grid3();
  const auto u = RadialField::from_function(g, [](double r) { return std::exp(-r * r); });
  CHECK(std::pow(lp_norm(u, 2.0), 2) == doctest::Approx(std::pow(M_PI / 2.0, 1.5)).epsilon(1e-6));
  CHECK(lp_norm(u, 1.0) == doctest::Approx(std::pow(M_PI, 1.5)).epsilon(1e-6));
}

TEST_CASE("radial derivative is second order and zero at the origin") {
  auto g = grid3();
  const auto u = RadialField::from_function(g, [](double r) { return std::exp(-r * r / 8.0); });
  const auto du = radial_derivative(u);
  CHECK(du[0] == 0.0);
  double worst = 0.0;
  for (std::size_t i = 1; i < u.size(); ++i) {
    const double r = g->r()[i];
    worst = std::max(worst, std::abs(du[i] + r / 4.0 * std::exp(-r * r / 8.0)));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("field validation") {
  auto g = grid3(100, 10.0);
  CHECK_THROWS_AS(RadialField(g, std::vector<double>(99, 0.0)), std::invalid_argument);
  auto f = RadialField::zeros(g);
  f[3] = NAN;
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
}
