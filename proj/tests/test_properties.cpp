// Invariants checked over random inputs: a seeded corpus of bump fields plus
// random dilation factors and masses.
#include <doctest.h>

#include <cmath>
#include <random>

#include "qnls/constants.hpp"
#include "qnls/corpus.hpp"
#include "qnls/scaling.hpp"
#include "qnls/solvers.hpp"

using namespace qnls;

namespace {
const GridPtr& grid() {
  static const GridPtr g = make_grid(GridSpec{});
  return g;
}
const std::vector<RadialField>& corpus() {
  static const auto c = random_corpus(grid(), CorpusSpec{60, 99});
  return c;
}
}  // namespace

TEST_CASE("property: fiber closed form equals the energy of the dilated field") {
  ProblemParams p;
  p.q = 3.0;
  p.mu = 1e-2;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ls(std::log(0.5), std::log(2.0));
  for (const auto& u : corpus()) {
    const double s = std::exp(ls(rng));
    const auto t = term_integrals(u, p.q, p.theta);
    const auto b = energy(dilate(u, s), p);
    const double scale = b.grad_theta + b.grad2 + b.quasi + b.subq + b.crit;
    CHECK(std::abs(fiber_value(t, p, s) - b.total_I) <= 1e-4 * scale);
  }
}

TEST_CASE("property: quasilinear GN inequality holds on the corpus") {
  for (auto [p, N] : {std::pair{3.0, 3}, {4.0, 3}}) {
    const double c2 = gn_constant_quasi(p, N);
    for (const auto& u : corpus()) CHECK(gn_ratio(u, p, c2) <= 1.0 + 1e-9);
  }
}

TEST_CASE("property: classic GN inequality holds on the corpus") {
  const double q = 3.0;
  const double c1 = gn_constant_classic(q, 3);
  const double g = gamma_exponent(3, q);
  for (const auto& u : corpus()) {
    const auto t = term_integrals(u, q, 2.7);
    CHECK(std::pow(t.lq, 1.0 / q) <= c1 * std::pow(t.grad2, g / 2) * std::pow(t.mass, (1 - g) / 2) * (1 + 1e-9));
  }
}

TEST_CASE("property: Pohozaev vanishes at every fiber critical point") {
  ProblemParams p;
  p.q = 2.5;
  for (std::size_t k = 0; k < corpus().size(); k += 6) {
    const auto u = mass_project(corpus()[k], 1.0);
    const auto t = term_integrals(u, p.q, p.theta);
    for (double s : fiber_roots(t, p)) CHECK(std::abs(fiber_pohozaev(t, p, s)) < 1e-6 * (1 + fiber_value(t, p, s)));
  }
}

TEST_CASE("property: mass projection is idempotent and scale-free") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(0.1, 20.0);
  for (const auto& u : corpus()) {
    const double m = c(rng);
    const auto a = mass_project(u, m);
    CHECK(mass(a) == doctest::Approx(m).epsilon(1e-13));
    const auto b = mass_project(a, m);
    for (std::size_t i = 0; i < a.size(); i += 97) CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-14));
  }
}

TEST_CASE("property: identity right side is negative for every defocusing field") {
  for (double tau : {0.0, -1.0}) {
    for (double q : {2.5, 3.0, 5.0}) {
      ProblemParams p;
      p.tau = tau;
      p.q = q;
      for (const auto& u : corpus()) CHECK(nonexistence_rhs(u, p) <= 0.0);
    }
  }
}
