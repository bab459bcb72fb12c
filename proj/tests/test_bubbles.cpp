#include <doctest.h>

#include <cmath>

#include "qnls/bubbles.hpp"
#include "qnls/constants.hpp"

using namespace qnls;

TEST_CASE("cut-off is C^1 and monotone") {
  CHECK(cutoff(0.5) == 1.0);
  CHECK(cutoff(1.5) == doctest::Approx(0.5));
  CHECK(cutoff(2.5) == 0.0);
  double prev = 1.0;
  for (double r = 1.0; r <= 2.0; r += 1e-3) {
    CHECK(cutoff(r) <= prev + 1e-15);
    prev = cutoff(r);
    const double h = 1e-6;
    if (r > 1.0 + h && r < 2.0 - h)
      CHECK(cutoff_derivative(r) == doctest::Approx((cutoff(r + h) - cutoff(r - h)) / (2 * h)).epsilon(1e-6));
  }
  CHECK(cutoff_derivative(1.0) == 0.0);
  CHECK(cutoff_derivative(2.0) == 0.0);
}

TEST_CASE("the squared bubble is the classic Sobolev extremal") {
  // v = u_eps^2 satisfies |grad v|_2^2 = |v|_{2^*}^{2^*} = S^{N/2}; in terms of
  // u that is 4 int u^2|grad u|^2 and |u|_{2*2^*}^{2*2^*}.
  for (int N : {3, 4}) {
    const double eps = 0.3;
    std::vector<double> breaks{0.0};
    for (double r = 1.0; r <= 1e6; r *= 10.0) breaks.push_back(r);
    const auto pi = profile_integrals([&](double r) { return aubin_talenti(r, eps, N); },
                                      [&](double r) { return aubin_talenti_derivative(r, eps, N); }, breaks, N,
                                      3.0, default_theta(N));
    const double target = std::pow(sobolev_constant(N), 0.5 * N);
    CAPTURE(N);
    CHECK(4.0 * pi.terms.quasi == doctest::Approx(target).epsilon(1e-5));
    CHECK(pi.terms.crit == doctest::Approx(target).epsilon(1e-5));
  }
}

TEST_CASE("bubble derivative") {
  for (double r : {0.01, 0.2, 1.3}) {
    const double h = 1e-7;
    CHECK(aubin_talenti_derivative(r, 1e-2, 3) ==
          doctest::Approx((aubin_talenti(r + h, 1e-2, 3) - aubin_talenti(r - h, 1e-2, 3)) / (2 * h)).epsilon(1e-6));
  }
  const BubbleSpec s{1e-2, 1.0, 2.0};
  const double r = 1.4, h = 1e-7;
  CHECK(cutoff_bubble_derivative(r, s, 3) ==
        doctest::Approx((cutoff_bubble(r + h, s, 3) - cutoff_bubble(r - h, s, 3)) / (2 * h)).epsilon(1e-6));
}

TEST_CASE("grid sampling refuses unresolved cores") {
  auto coarse = make_grid(GridSpec{3, 10.0, 200, 1.0});
  CHECK_THROWS_AS(bubble(BubbleSpec{1e-4, 1.0, 2.0}, coarse), ResolutionError);
  auto fine = make_grid(GridSpec{3, 10.0, 2000, 1.006});
  const auto U = bubble(BubbleSpec{1e-2, 1.0, 2.0}, fine);
  CHECK(U[0] == doctest::Approx(aubin_talenti(0.0, 1e-2, 3)));
  CHECK(U.values.back() == 0.0);
  auto short_grid = make_grid(GridSpec{3, 1.5, 2000, 1.003});
  CHECK_THROWS_AS(bubble(BubbleSpec{1e-2, 1.0, 2.0}, short_grid), ResolutionError);
}

TEST_CASE("alpha windows") {
  // N = 3, q = 6: the plain window is empty, the large-coupling one is [0, 1/8].
  const auto plain = alpha_interval(3, 6.0);
  CHECK(plain.empty());
  const auto a = admissible_alpha(3, 6.0);
  CHECK(a.large_coupling);
  CHECK(a.lo == 0.0);
  CHECK(a.hi == doctest::Approx(0.125));
  CHECK(a.midpoint() == doctest::Approx(1.0 / 16.0));
  CHECK(bubble_prefactor(3) == doctest::Approx(std::pow(3.0, 0.125)));
}

TEST_CASE("ramp mass: closed form against quadrature") {
  for (int N : {3, 4}) {
    const TruncatedBubbleSpec s{1e-3, 0.0625, 0.3};
    const double ra = std::pow(s.eps, -s.alpha);
    const auto core = profile_integrals([&](double r) { return truncated_bubble_value(r, s, N); },
                                        [&](double r) { return truncated_bubble_derivative(r, s, N); }, {0.0, ra}, N,
                                        3.0, default_theta(N));
    const auto all = truncated_bubble_integrals(s, N, 3.0, default_theta(N));
    CHECK(all.terms.mass - core.terms.mass == doctest::Approx(ramp_mass_closed_form(s, N)).epsilon(1e-9));
  }
}

TEST_CASE("beta: exact root reproduces the mass, asymptotic root approaches it") {
  const double alpha = 1.0 / 16.0;
  for (double eps : {1e-3, 1e-5}) {
    const double b = solve_beta(eps, alpha, 10.0, 3, BetaMode::Exact);
    const auto ti = truncated_bubble_integrals(TruncatedBubbleSpec{eps, alpha, b}, 3, 6.0, default_theta(3));
    CHECK(ti.terms.mass == doctest::Approx(10.0).epsilon(1e-8));
  }
  // The asymptotic relation only holds in the limit: the mass error shrinks
  // slowly as eps decreases.
  auto asym_error = [&](double eps) {
    const double b = solve_beta(eps, alpha, 10.0, 3, BetaMode::Asymptotic);
    return std::abs(truncated_bubble_integrals(TruncatedBubbleSpec{eps, alpha, b}, 3, 6.0, default_theta(3)).terms.mass -
                    10.0);
  };
  CHECK(asym_error(1e-10) < asym_error(1e-6));
  CHECK(asym_error(1e-6) < asym_error(1e-3));
  CHECK_THROWS_AS(solve_beta(2.0, alpha, 1.0, 3), std::invalid_argument);
}

TEST_CASE("power fit recovers an exact law") {
  const std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5};
  std::vector<double> dev;
  for (double e : eps) dev.push_back(3.0 * std::pow(e, 0.75));
  const auto [slope, r2] = fit_power(eps, dev);
  CHECK(slope == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(r2 == doctest::Approx(1.0));
}

TEST_CASE("cut-off estimate suite: quasi-gradient deviation exponent") {
  const std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5};
  for (int N : {3, 4}) {
    EstimateOptions o;
    o.dim = N;
    const auto t = estimate_suite(BubbleKind::Cutoff, eps, o);
    const auto& row = t.row("quasi_gradient");
    CAPTURE(N);
    CHECK(row.expected == doctest::Approx(0.5 * (N - 2)));
    CHECK(row.within_band);
    CHECK(std::abs(row.fitted - row.expected) <= 0.15 * row.expected);
  }
  CHECK_THROWS_AS(estimate_suite(BubbleKind::Cutoff, {1e-2, 1e-3, 1e-4}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_suite(BubbleKind::Cutoff, {1e-2, 2e-2, 3e-2, 4e-2}), std::invalid_argument);
}

TEST_CASE("truncated estimate suite runs and reports every row") {
  const auto t = estimate_suite(BubbleKind::Truncated, {1e-2, 1e-3, 1e-4, 1e-5});
  CHECK(t.beta.size() == 4);
  CHECK(t.alpha == doctest::Approx(1.0 / 16.0));
  for (const char* name : {"gradient", "critical", "quasi_gradient", "lq", "mass"}) CHECK_NOTHROW(t.row(name));
  CHECK_THROWS(t.row("nonsense"));
}
