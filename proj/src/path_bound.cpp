// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "qnls/constants.hpp"
#include "qnls/solvers.hpp"

namespace qnls {

std::string to_string(PathFamily f) {
  return f == PathFamily::WEpsT ? "w_eps_t" : "dilated_truncated";
}

double scalar_path_max(int dim) {
  if (dim < 3) throw std::invalid_argument("scalar_path_max requires N >= 3");
  const double r = 4.0 * dim / (dim - 2.0);
  auto neg = [r](double t) { return -(std::pow(t, 4) / 4.0 - std::pow(t, r) / r); };
  const auto m = boost::math::tools::brent_find_minima(neg, 0.0, 2.0, 60);
  return -m.second;
}

namespace {

// Terms of W = eta^{(N-2)/4} W~(eta x) rescaled so that |W|_2^2 = c. The
// quasilinear and critical terms are invariant under this scaling; the
// others pick up a power of eta.
TermIntegrals normalise_w(const TermIntegrals& raw, const ProblemParams& p) {
  const double N = p.dim;
  const double eta = std::pow(raw.mass / p.mass, 2.0 / (N + 2.0));
  TermIntegrals t = raw;
  t.grad2 = raw.grad2 * std::pow(eta, (2.0 - N) / 2.0);
  t.lq = raw.lq * std::pow(eta, ((N - 2.0) * p.q - 4.0 * N) / 4.0);
  t.theta_grad = raw.theta_grad * std::pow(eta, ((N - 2.0) / 4.0 + 1.0) * p.theta - N);
  t.mass = p.mass;
  return t;
}

double w_energy(const RadialField& base, const RadialField& bubble, double t, const ProblemParams& p) {
  RadialField w = base;
  for (std::size_t i = 0; i < w.size(); ++i) w.values[i] += t * bubble.values[i];
  const TermIntegrals raw = term_integrals(w, p.q, p.theta);
  return breakdown_from_terms(normalise_w(raw, p), p).total_I;
}

PathBound w_eps_t(const ProblemParams& p, const RadialField& base, const PathOptions& opt) {
  PathBound out;
  out.family = PathFamily::WEpsT;
  const RadialField U = bubble(BubbleSpec{opt.eps, 1.0, 2.0}, base.grid);
  out.base_level = breakdown_from_terms(term_integrals(base, p.q, p.theta), p).total_I;
  if (!(out.base_level < 0.0)) throw std::invalid_argument("W_eps_t path needs a base with negative energy");
  out.threshold = out.base_level + std::pow(sobolev_constant(p.dim), 0.5 * p.dim) / (2.0 * p.dim);

  // Widen the t-range until the far end drops below 2m.
  double t_max = 4.0;
  double far = w_energy(base, U, t_max, p);
  while (!(far < 2.0 * out.base_level) && t_max < 4096.0) {
    t_max *= 2.0;
    far = w_energy(base, U, t_max, p);
  }
  out.endpoint_value = far;
  out.endpoint_ok = far < 2.0 * out.base_level;

  const int n = std::max(opt.samples, 8);
  std::size_t best = 0;
  for (int i = 0; i <= n; ++i) {
    const double t = t_max * i / n;
    out.parameter.push_back(t);
    out.values.push_back(w_energy(base, U, t, p));
    if (out.values.back() > out.values[best]) best = out.values.size() - 1;
  }
  const double a = out.parameter[best == 0 ? 0 : best - 1];
  const double b = out.parameter[std::min<std::size_t>(best + 1, out.parameter.size() - 1)];
  auto neg = [&](double t) { return -w_energy(base, U, t, p); };
  const auto m = boost::math::tools::brent_find_minima(neg, a, b, 40);
  out.argmax = out.values[best] >= -m.second ? out.parameter[best] : m.first;
  out.level_bound = std::max(out.values[best], -m.second);
  out.below_threshold = out.level_bound < out.threshold;
  return out;
}

PathBound dilated_truncated(const ProblemParams& p, const PathOptions& opt) {
  PathBound out;
  out.family = PathFamily::DilatedTruncated;
  out.alpha = opt.alpha > 0.0 ? opt.alpha : admissible_alpha(p.dim, p.q).midpoint();
  out.beta = solve_beta(opt.eps, out.alpha, p.mass, p.dim, opt.beta_mode);
  const TruncatedBubbleSpec spec{opt.eps, out.alpha, out.beta};
  const TermIntegrals raw = truncated_bubble_integrals(spec, p.dim, p.q, p.theta).terms;

  // V_hat = k U_hat with k^2 = c / |U_hat|_2^2; every term is homogeneous in k.
  const double k = std::sqrt(p.mass / raw.mass);
  TermIntegrals t = raw;
  t.grad2 = raw.grad2 * k * k;
  t.theta_grad = raw.theta_grad * std::pow(k, p.theta);
  t.quasi = raw.quasi * std::pow(k, 4);
  t.lq = raw.lq * std::pow(k, p.q);
  t.crit = raw.crit * std::pow(k, p.critical_exponent());
  t.mass = p.mass;

  const SRange range{1e-3, 1e3, std::max(opt.samples, 8)};
  const FiberMax fm = fiber_max(t, p, range);
  out.level_bound = fm.value;
  out.argmax = fm.s;
  out.base_level = 0.0;
  out.threshold = std::pow(sobolev_constant(p.dim), 0.5 * p.dim) / (2.0 * p.dim);
  out.endpoint_value = fiber_value(t, p, range.hi);
  out.endpoint_ok = out.endpoint_value < 0.0;
  out.below_threshold = out.level_bound < out.threshold;
  const double step = std::log(range.hi / range.lo) / range.samples;
  for (int i = 0; i <= range.samples; ++i) {
    const double s = range.lo * std::exp(step * i);
    out.parameter.push_back(s);
    out.values.push_back(fiber_value(t, p, s));
  }
  return out;
}

}  // namespace

PathBound path_energy_bound(const ProblemParams& p, const RadialField* base, PathFamily family,
                            const PathOptions& opt) {
  p.validate();
  if (!(opt.eps > 0.0 && opt.eps < 1.0)) throw std::invalid_argument("path eps must lie in (0,1)");
  if (family == PathFamily::WEpsT) {
    if (!base || !base->grid) throw std::invalid_argument("W_eps_t path requires a base profile");
    return w_eps_t(p, *base, opt);
  }
  return dilated_truncated(p, opt);
}

}  // namespace qnls
