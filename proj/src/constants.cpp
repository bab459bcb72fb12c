// SPDX-License-Identifier: Apache-2.0
#include "qnls/constants.hpp"

#include "qnls/functionals.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

namespace qnls {

namespace {

void require_dim(int dim) {
  if (dim < 3) throw std::invalid_argument("dimension must satisfy N >= 3");
}

// Trapezoid sums of both Rayleigh-quotient integrals with 2^level panels.
std::pair<double, double> sobolev_trapezoid(int dim, int level) {
  const double N = dim;
  const int n = 1 << level;
  const double h = 0.5 * std::numbers::pi / n;
  double grad = 0.0;
  double crit = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double t = k * h;
    const double s = std::sin(t);
    const double c = std::cos(t);
    const double wk = (k == 0 || k == n) ? 0.5 : 1.0;
    grad += wk * (N - 2.0) * (N - 2.0) * std::pow(s, N + 1.0) * std::pow(c, N - 3.0);
    crit += wk * std::pow(s, N - 1.0) * std::pow(c, N - 1.0);
  }
  return {grad * h, crit * h};
}

double quotient(int dim, double grad, double crit) {
  const double omega = sphere_area(dim);
  const double ratio = 2.0 / (2.0 * dim / (dim - 2.0));
  return omega * grad / std::pow(omega * crit, ratio);
}

}  // namespace

SobolevEstimate sobolev_estimate(int dim, int levels) {
  require_dim(dim);
  if (levels < 2) throw std::invalid_argument("sobolev_estimate needs at least 2 levels");
  SobolevEstimate est;
  std::vector<std::vector<double>> rg(levels), rc(levels);
  for (int k = 0; k < levels; ++k) {
    const auto [g, c] = sobolev_trapezoid(dim, k + 2);
    est.trapezoid.push_back(quotient(dim, g, c));
    rg[k].push_back(g);
    rc[k].push_back(c);
    for (int j = 1; j <= k; ++j) {
      const double f = std::pow(4.0, j);
      rg[k].push_back((f * rg[k][j - 1] - rg[k - 1][j - 1]) / (f - 1.0));
      rc[k].push_back((f * rc[k][j - 1] - rc[k - 1][j - 1]) / (f - 1.0));
    }
    est.extrapolated.push_back(quotient(dim, rg[k].back(), rc[k].back()));
  }
  est.value = est.extrapolated.back();
  return est;
}

double sobolev_constant(int dim) { return sobolev_estimate(dim).value; }

double sobolev_constant_closed_form(int dim) {
  require_dim(dim);
  const double N = dim;
  return std::numbers::pi * N * (N - 2.0) *
         std::pow(std::tgamma(0.5 * N) / std::tgamma(N), 2.0 / N);
}

GNExtremal gn_extremal(double p, int dim, const ShootingOptions& opt) {
  require_dim(dim);
  const double upper = 4.0 * dim / (dim - 2.0);
  if (!(p > 2.0 && p < upper)) {
    std::ostringstream os;
    os << "gn_extremal requires 2 < p < " << upper << ", got p = " << p;
    throw std::invalid_argument(os.str());
  }
  GNExtremal ex;
  ex.p = p;
  ex.dim = dim;
  ex.trajectory = shoot_ground_state(GroundStateKind::QuasiCompact, p, dim, opt);
  ex.l1_norm = ex.trajectory.l1;
  ex.shoot_param = ex.trajectory.height;
  ex.support = ex.trajectory.edge;
  ex.ode_residual = ex.trajectory.ode_residual();
  return ex;
}

double gn_prefactor(double p, int dim) {
  const double N = dim;
  const double b = N * (p - 2.0) / (2.0 * (N + 2.0));
  const double e = (4.0 * N + 4.0 - N * p) / (2.0 * (N + 2.0));
  return p * (N + 2.0) / (std::pow(4.0 * N - (N - 2.0) * p, e) * std::pow(2.0 * N * (p - 2.0), b));
}

double gn_constant_quasi(double p, int dim) {
  const double N = dim;
  const GNExtremal ex = gn_extremal(p, dim);
  const double b = N * (p - 2.0) / (2.0 * (N + 2.0));
  return std::pow(4.0, b) * gn_prefactor(p, dim) / std::pow(ex.l1_norm, (p - 2.0) / (N + 2.0));
}

double gn_ratio(const RadialField& u, double p, double c2) {
  const double N = u.grid->dim();
  const double a = (4.0 * N - p * (N - 2.0)) / (2.0 * (N + 2.0));
  const double b = N * (p - 2.0) / (2.0 * (N + 2.0));
  const TermIntegrals t = term_integrals(u, p, default_theta(u.grid->dim()));
  const double denom = c2 * std::pow(t.mass, a) * std::pow(t.quasi, b);
  return denom > 0.0 ? t.lq / denom : 0.0;
}

ShootingResult classic_ground_state(double q, int dim, const ShootingOptions& opt) {
  require_dim(dim);
  const double crit = 2.0 * dim / (dim - 2.0);
  if (!(q > 2.0 && q < crit)) {
    std::ostringstream os;
    os << "classic ground state requires 2 < q < " << crit << ", got q = " << q;
    throw std::invalid_argument(os.str());
  }
  return shoot_ground_state(GroundStateKind::ClassicDecaying, q, dim, opt);
}

double gn_constant_classic(double q, int dim) {
  require_dim(dim);
  const double crit = 2.0 * dim / (dim - 2.0);
  if (!(q >= 2.0 && q <= crit)) {
    std::ostringstream os;
    os << "gn_constant_classic requires 2 <= q <= " << crit << ", got q = " << q;
    throw std::invalid_argument(os.str());
  }
  if (q == 2.0) return 1.0;
  if (q == crit) return 1.0 / std::sqrt(sobolev_constant(dim));
  const ShootingResult w = classic_ground_state(q, dim);
  const double g = gamma_exponent(dim, q);
  return std::pow(w.lp, 1.0 / q) / (std::pow(w.grad2, 0.5 * g) * std::pow(w.l2sq, 0.5 * (1.0 - g)));
}

LandscapeExponents landscape_exponents(int dim, double q) {
  const double N = dim;
  return {N * (q - 2.0) / (2.0 * (N + 2.0)) - 1.0, (4.0 * N - q * (N - 2.0)) / (2.0 * (N + 2.0)),
          2.0 / (N - 2.0)};
}

double Landscape::operator()(double c, double rho) const {
  return 0.5 - A * std::pow(c, e.alpha1) * std::pow(rho, e.alpha0) - B * std::pow(rho, e.alpha2);
}

double Landscape::rho_c(double c) const {
  if (!(e.alpha0 < 0.0) || !(A > 0.0))
    throw std::domain_error("rho_c needs alpha0 < 0 and a positive subcritical coefficient");
  const double x = -e.alpha0 / e.alpha2 * A / B;
  return std::pow(x * std::pow(c, e.alpha1), 1.0 / (e.alpha2 - e.alpha0));
}

Landscape make_landscape(const ProblemParams& p) {
  require_dim(p.dim);
  Landscape f;
  f.e = landscape_exponents(p.dim, p.q);
  const double S = sobolev_constant(p.dim);
  const double ss = p.sobolev_exponent();
  f.A = p.tau == 0.0 ? 0.0 : p.tau * gn_constant_quasi(p.q, p.dim) / p.q;
  f.B = std::pow(4.0 / S, 0.5 * ss) / (2.0 * ss);
  return f;
}

double f_landscape(double c, double rho, const ProblemParams& p) {
  if (!(c > 0.0 && rho > 0.0)) throw std::invalid_argument("f_landscape requires c > 0 and rho > 0");
  return make_landscape(p)(c, rho);
}

LandscapeMax f_max(const Landscape& f, double c, double rho_lo, double rho_hi) {
  const int samples = 481;
  const double a = std::log(rho_lo);
  const double b = std::log(rho_hi);
  const double step = (b - a) / (samples - 1);
  int best = 0;
  double best_val = -INFINITY;
  for (int i = 0; i < samples; ++i) {
    const double v = f(c, std::exp(a + step * i));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = a + step * std::max(best - 1, 0);
  const double hi = a + step * std::min(best + 1, samples - 1);
  auto neg = [&](double lr) { return -f(c, std::exp(lr)); };
  const auto r = boost::math::tools::brent_find_minima(neg, lo, hi, 52);
  LandscapeMax m{std::exp(r.first), -r.second};
  if (m.value < best_val) m = {std::exp(a + step * best), best_val};
  return m;
}

double q_N(int dim) {
  require_dim(dim);
  const double N = dim;
  return dim >= 5 ? 4.0 + 4.0 / N : 2.0 * (N + 2.0) / (N - 2.0);
}

double D1(int dim) {
  const double N = dim;
  return std::min((N * N + 4.0) / (2.0 * N * (N + 2.0)), 2.0 / N);
}

ThresholdSet thresholds(const ProblemParams& p) {
  require_dim(p.dim);
  ThresholdSet t;
  const double N = p.dim;
  const double q = p.q;
  const double tau = p.tau;
  const double ss = p.sobolev_exponent();
  t.dim = p.dim;
  t.q = q;
  t.tau = tau;
  t.mass = p.mass;
  t.sobolev = sobolev_constant(p.dim);
  t.level_threshold = std::pow(t.sobolev, 0.5 * N) / (2.0 * N);
  t.qN = q_N(p.dim);
  t.D1 = D1(p.dim);
  t.alphas = landscape_exponents(p.dim, q);
  t.alphas_in_range = t.alphas.alpha0 > -1.0 && t.alphas.alpha0 < 0.0 && t.alphas.alpha1 > 2.0 / N &&
                      t.alphas.alpha1 < 1.0 && t.alphas.alpha2 > 0.0 && t.alphas.alpha2 <= 2.0;

  const bool quasi_ok = q > 2.0 && q < 2.0 * ss;
  const bool classic_ok = q >= 2.0 && q <= ss;
  if (quasi_ok) t.C2_q = gn_constant_quasi(q, p.dim);
  if (classic_ok) t.C1_q = gn_constant_classic(q, p.dim);

  if (!(tau > 0.0)) {
    t.notes.push_back("tau <= 0: every threshold built from tau C is undefined");
    return t;
  }

  // Local-minimum thresholds: need alpha0 < 0, i.e. q below 4 + 4/N.
  if (t.C2_q && t.alphas.alpha0 < 0.0) {
    const auto& e = t.alphas;
    const double x = -e.alpha0 / e.alpha2 * tau * *t.C2_q * ss * std::pow(t.sobolev, 0.5 * ss) /
                     (std::pow(2.0, ss - 1.0) * q);
    const double d = e.alpha2 - e.alpha0;
    t.K = tau * *t.C2_q / q * std::pow(x, e.alpha0 / d) +
          std::pow(4.0 / t.sobolev, 0.5 * ss) / (2.0 * ss) * std::pow(x, e.alpha2 / d);
    t.c0 = std::pow(1.0 / (2.0 * *t.K), 0.5 * N);
    t.rho0 = std::pow(x, 1.0 / d) * std::pow(*t.c0, e.alpha1 / d);
    t.rho_c = std::pow(x, 1.0 / d) * std::pow(p.mass, e.alpha1 / d);
    const double gq = gamma_exponent(p.dim, q);
    const double base = tau * N * *t.C2_q / 2.0 * (1.0 / q - (N - 2.0) * gq / (N * (N + 2.0)));
    if (base > 0.0) {
      t.rho_tilde0 = std::pow(base, 2.0 * (N + 2.0) / (4.0 * N + 4.0 - N * q)) *
                     std::pow(*t.c0, (4.0 * N - q * (N - 2.0)) / (4.0 * N + 4.0 - N * q));
    } else {
      t.notes.push_back("rho_tilde0: base of the power is not positive");
    }
  } else {
    t.notes.push_back("c0, K, rho0, rho_c, rho_tilde0 need 2 < q < 4 + 4/N");
  }

  const double q_l2 = 2.0 + 4.0 / N;
  t.cbar1 = std::pow((N + 2.0) / (2.0 * tau * N * std::pow(gn_constant_classic(q_l2, p.dim), q_l2)), 0.5 * N);

  const double q_quasi = 4.0 + 4.0 / N;
  t.cbar3 = std::pow((4.0 * N + 4.0) / (tau * N * (N + 2.0) * gn_constant_quasi(q_quasi, p.dim)), 0.5 * N);

  if (t.C1_q && t.C2_q && q > q_l2 && q < q_quasi) {
    const double C1q = std::pow(*t.C1_q, q);
    const double left = std::pow(1.0 / (tau * C1q) * (N * N + 4.0) * q / (N * (4.0 * N - q * (N - 2.0))),
                                 (4.0 * N + 4.0 - N * q) / (N * (q - 2.0)));
    const double right = std::pow(t.D1 / (tau * *t.C2_q) * 2.0 * q * (N + 2.0) / (4.0 * N - q * (N - 2.0)),
                                  (N + 2.0) * (N * (q - 2.0) - 4.0) / (2.0 * N * (q - 2.0)));
    t.cbar2 = left * right;
    t.rho_star = std::pow(1.0 / (tau * C1q) * (N * N + 4.0) * q / (N * (4.0 * N - q * (N - 2.0))),
                          4.0 / (N * (q - 2.0) - 4.0)) *
                 std::pow(p.mass, (q * (N - 2.0) - 2.0 * N) / (N * (q - 2.0) - 4.0));
  } else {
    t.notes.push_back("cbar2 and rho_star need 2 + 4/N < q <= 2^* and q < 4 + 4/N");
  }
  return t;
}

}  // namespace qnls
