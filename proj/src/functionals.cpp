// SPDX-License-Identifier: Apache-2.0
#include "qnls/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace qnls {

namespace {

double signed_pow(double x, double e) { return std::copysign(std::pow(std::abs(x), e), x); }

void require_mass(double m) {
  if (!(m > 0.0)) throw std::invalid_argument("multiplier requires a field with positive mass");
}

}  // namespace

const std::vector<std::string>& EnergyBreakdown::csv_columns() {
  static const std::vector<std::string> cols{"grad_theta", "grad2", "quasi", "subq",
                                             "crit",       "total_I", "total_Q"};
  return cols;
}

std::vector<double> EnergyBreakdown::csv_row() const {
  return {grad_theta, grad2, quasi, subq, crit, total_I, total_Q};
}

TermIntegrals term_integrals(const RadialField& u, double q, double theta) {
  u.validate();
  const Grid& g = *u.grid;
  const auto& h = g.h();
  const auto& cell = g.cell_measure();
  const auto& w = g.weights();
  const auto& v = u.values;
  const std::size_t n = v.size();
  TermIntegrals t;
  auto value = [&](std::size_t i) { return i + 1 == n ? 0.0 : v[i]; };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = value(i);
    const double b = value(i + 1);
    const double d = (b - a) / h[i];
    const double d2 = d * d;
    t.theta_grad += cell[i] * std::pow(std::abs(d), theta);
    t.grad2 += cell[i] * d2;
    t.quasi += cell[i] * 0.5 * (a * a + b * b) * d2;
  }
  // 2*2^* is passed implicitly through the dimension.
  const double crit = 4.0 * g.dim() / (g.dim() - 2.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = std::abs(v[i]);
    t.lq += w[i] * std::pow(a, q);
    t.crit += w[i] * std::pow(a, crit);
    t.mass += w[i] * a * a;
  }
  return t;
}

std::array<double, 5> energy_coefficients(const ProblemParams& p) {
  return {p.mu / p.theta, 0.5, 1.0, p.tau / p.q, 1.0 / p.critical_exponent()};
}

std::array<double, 5> pohozaev_coefficients(const ProblemParams& p) {
  return {p.mu * (1.0 + p.gamma_theta()), 1.0, p.dim + 2.0, p.tau * p.gamma_q(),
          (p.dim + 2.0) / 4.0};
}

std::array<double, 5> fiber_exponents(const ProblemParams& p) {
  const double N = p.dim;
  return {p.theta * (1.0 + p.gamma_theta()), 2.0, N + 2.0, N * (p.q - 2.0) / 2.0,
          N * (p.sobolev_exponent() - 1.0)};
}

EnergyBreakdown breakdown_from_terms(const TermIntegrals& t, const ProblemParams& p) {
  const auto a = energy_coefficients(p);
  const auto b = pohozaev_coefficients(p);
  EnergyBreakdown e;
  e.grad_theta = a[0] * t.theta_grad;
  e.grad2 = a[1] * t.grad2;
  e.quasi = a[2] * t.quasi;
  e.subq = a[3] * t.lq;
  e.crit = a[4] * t.crit;
  e.total_I = e.grad_theta + e.grad2 + e.quasi - e.subq - e.crit;
  e.total_Q = b[0] * t.theta_grad + b[1] * t.grad2 + b[2] * t.quasi - b[3] * t.lq - b[4] * t.crit;
  return e;
}

EnergyBreakdown energy(const RadialField& u, const ProblemParams& p) {
  return breakdown_from_terms(term_integrals(u, p.q, p.theta), p);
}

double pohozaev(const RadialField& u, const ProblemParams& p) { return energy(u, p).total_Q; }

double normalized_pohozaev(const TermIntegrals& t, const ProblemParams& p) {
  const double Q = breakdown_from_terms(t, p).total_Q;
  return std::abs(Q) / (t.grad2 + t.quasi + 1.0);
}

double xi_mu(const TermIntegrals& t, const ProblemParams& p) {
  return p.mu / p.theta * t.theta_grad + t.grad2 + t.quasi;
}

double weak_residual(const RadialField& u, double lambda, const ProblemParams& p) {
  u.validate();
  const Grid& g = *u.grid;
  const auto& r = g.r();
  const auto& w = g.weights();
  const std::size_t n = r.size();
  const double N = g.dim();
  const double crit = p.critical_exponent();
  std::vector<double> v = u.values;
  v[n - 1] = 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double d1 = 0.0;
    double d2 = 0.0;
    double lap = 0.0;
    double plap = 0.0;
    if (i == 0) {
      // Even extension: u''(0) from the mirrored node, Laplacian N u''(0).
      d2 = 2.0 * (v[1] - v[0]) / (r[1] * r[1]);
      lap = N * d2;
    } else {
      const double hm = r[i] - r[i - 1];
      const double hp = r[i + 1] - r[i];
      d1 = -hp / (hm * (hm + hp)) * v[i - 1] + (hp - hm) / (hm * hp) * v[i] +
           hm / (hp * (hm + hp)) * v[i + 1];
      d2 = 2.0 * (v[i - 1] / (hm * (hm + hp)) - v[i] / (hm * hp) + v[i + 1] / (hp * (hm + hp)));
      lap = d2 + (N - 1.0) * d1 / r[i];
      const double gpow = std::pow(std::abs(d1), p.theta - 2.0);
      plap = (p.theta - 1.0) * gpow * d2 + (N - 1.0) / r[i] * gpow * d1;
    }
    const double ui = v[i];
    const double quasi = -ui * (2.0 * d1 * d1 + 2.0 * ui * lap);
    const double res = -p.mu * plap - lap + quasi + lambda * ui -
                       p.tau * signed_pow(ui, p.q - 1.0) - signed_pow(ui, crit - 1.0);
    acc += w[i] * res * res;
  }
  return std::sqrt(acc);
}

double multiplier_weak(const TermIntegrals& t, const ProblemParams& p) {
  require_mass(t.mass);
  const double pairing = p.mu * t.theta_grad + t.grad2 + 4.0 * t.quasi - p.tau * t.lq - t.crit;
  return -pairing / t.mass;
}

double multiplier_weak(const RadialField& u, const ProblemParams& p) {
  return multiplier_weak(term_integrals(u, p.q, p.theta), p);
}

double multiplier_identity(const TermIntegrals& t, const ProblemParams& p) {
  require_mass(t.mass);
  const double N = p.dim;
  const double base = p.tau * (1.0 - 4.0 * p.gamma_q() / (N + 2.0)) * t.lq -
                      (N - 2.0) / (N + 2.0) * t.grad2;
  const double mu_part = p.mu * (4.0 * (1.0 + p.gamma_theta()) / (N + 2.0) - 1.0) * t.theta_grad;
  return (base + mu_part) / t.mass;
}

double multiplier_identity(const RadialField& u, const ProblemParams& p) {
  return multiplier_identity(term_integrals(u, p.q, p.theta), p);
}

std::vector<double> functional_gradient(const RadialField& u, const ProblemParams& p,
                                        const std::array<double, 5>& coef) {
  u.validate();
  const Grid& g = *u.grid;
  const auto& h = g.h();
  const auto& cell = g.cell_measure();
  const auto& w = g.weights();
  const std::size_t n = u.size();
  const double crit = p.critical_exponent();
  std::vector<double> v = u.values;
  v[n - 1] = 0.0;
  std::vector<double> grad(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = (v[i + 1] - v[i]) / h[i];
    const double um2 = 0.5 * (v[i] * v[i] + v[i + 1] * v[i + 1]);
    const double flux = cell[i] *
                        (coef[0] * p.theta * std::pow(std::abs(d), p.theta - 2.0) * d +
                         2.0 * coef[1] * d + 2.0 * coef[2] * um2 * d) /
                        h[i];
    grad[i] -= flux;
    grad[i + 1] += flux;
    const double dd = coef[2] * cell[i] * d * d;
    grad[i] += dd * v[i];
    grad[i + 1] += dd * v[i + 1];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    grad[i] -= w[i] * (coef[3] * p.q * signed_pow(v[i], p.q - 1.0) +
                       coef[4] * crit * signed_pow(v[i], crit - 1.0));
  }
  grad[n - 1] = 0.0;
  return grad;
}

std::vector<double> energy_gradient(const RadialField& u, const ProblemParams& p) {
  return functional_gradient(u, p, energy_coefficients(p));
}

std::vector<double> pohozaev_gradient(const RadialField& u, const ProblemParams& p) {
  return functional_gradient(u, p, pohozaev_coefficients(p));
}

}  // namespace qnls
