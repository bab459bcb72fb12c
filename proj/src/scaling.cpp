// SPDX-License-Identifier: Apache-2.0
#include "qnls/scaling.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

namespace qnls {

namespace {

void validate_range(const SRange& range) {
  if (!(range.lo > 0.0 && range.hi > range.lo) || range.samples < 3)
    throw std::invalid_argument("s-range must satisfy 0 < lo < hi with at least 3 samples");
}

std::vector<double> log_samples(const SRange& range) {
  std::vector<double> s(range.samples);
  const double a = std::log(range.lo);
  const double b = std::log(range.hi);
  for (int i = 0; i < range.samples; ++i) s[i] = std::exp(a + (b - a) * i / (range.samples - 1));
  return s;
}

struct SplineDeleter {
  void operator()(gsl_spline* s) const { gsl_spline_free(s); }
};
struct AccelDeleter {
  void operator()(gsl_interp_accel* a) const { gsl_interp_accel_free(a); }
};

}  // namespace

double mass(const RadialField& u) {
  u.validate();
  const auto& w = u.grid->weights();
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) m += w[i] * u.values[i] * u.values[i];
  return m;
}

RadialField mass_project(const RadialField& u, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("mass_project requires c > 0");
  const double m = mass(u);
  if (!(m > 0.0)) throw std::invalid_argument("mass_project requires a non-zero field");
  RadialField out = u;
  const double f = std::sqrt(c / m);
  for (auto& v : out.values) v *= f;
  out.values.back() = 0.0;
  return out;
}

RadialField dilate(const RadialField& u, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("dilate requires s > 0");
  u.validate();
  if (s == 1.0) return u;
  const auto& r = u.grid->r();
  const std::size_t n = r.size();
  const double rmax = u.grid->r_max();
  // Mirror the samples to (-r_max, r_max) so the natural spline sees an even
  // function and reproduces u'(0) = 0 without a special boundary condition.
  std::vector<double> x(2 * n - 1), y(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double val = (i + 1 == n) ? 0.0 : u.values[i];
    x[n - 1 - i] = -r[i];
    y[n - 1 - i] = val;
    x[n - 1 + i] = r[i];
    y[n - 1 + i] = val;
  }
  static const bool gsl_quiet = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)gsl_quiet;
  std::unique_ptr<gsl_spline, SplineDeleter> spline(gsl_spline_alloc(gsl_interp_cspline, x.size()));
  std::unique_ptr<gsl_interp_accel, AccelDeleter> acc(gsl_interp_accel_alloc());
  gsl_spline_init(spline.get(), x.data(), y.data(), x.size());
  const double N = u.grid->dim();
  const double amp = std::pow(s, 0.5 * N);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double xs = s * r[i];
    if (xs < rmax) out[i] = amp * gsl_spline_eval(spline.get(), xs, acc.get());
  }
  return RadialField(u.grid, std::move(out));
}

double fiber_value(const TermIntegrals& t, const ProblemParams& p, double s) {
  const auto a = energy_coefficients(p);
  const auto e = fiber_exponents(p);
  return a[0] * std::pow(s, e[0]) * t.theta_grad + a[1] * std::pow(s, e[1]) * t.grad2 +
         a[2] * std::pow(s, e[2]) * t.quasi - a[3] * std::pow(s, e[3]) * t.lq -
         a[4] * std::pow(s, e[4]) * t.crit;
}

double fiber_pohozaev(const TermIntegrals& t, const ProblemParams& p, double s) {
  const auto a = energy_coefficients(p);
  const auto e = fiber_exponents(p);
  return e[0] * a[0] * std::pow(s, e[0]) * t.theta_grad + e[1] * a[1] * std::pow(s, e[1]) * t.grad2 +
         e[2] * a[2] * std::pow(s, e[2]) * t.quasi - e[3] * a[3] * std::pow(s, e[3]) * t.lq -
         e[4] * a[4] * std::pow(s, e[4]) * t.crit;
}

FiberProfile fiber_profile(const RadialField& u, const ProblemParams& p,
                           const std::vector<double>& s_samples) {
  FiberProfile fp;
  fp.base = u;
  const TermIntegrals t = term_integrals(u, p.q, p.theta);
  double prev = 0.0;
  for (double s : s_samples) {
    if (!(s > 0.0) || (!fp.s_samples.empty() && !(s > prev)))
      throw std::invalid_argument("fiber samples must be positive and strictly increasing");
    prev = s;
    fp.s_samples.push_back(s);
    fp.values.push_back(fiber_value(t, p, s));
    fp.pohozaev.push_back(fiber_pohozaev(t, p, s));
  }
  return fp;
}

FiberMax fiber_max(const TermIntegrals& t, const ProblemParams& p, const SRange& range) {
  validate_range(range);
  const auto s = log_samples(range);
  std::size_t best = 0;
  double best_val = fiber_value(t, p, s[0]);
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double v = fiber_value(t, p, s[i]);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best == 0 || best + 1 == s.size()) {
    std::ostringstream os;
    os << "fiber maximum not interior to [" << range.lo << ", " << range.hi
       << "]; widen the s-range";
    throw BracketError(os.str());
  }
  // Brent on log s between the neighbours of the best sample.
  auto neg = [&](double ls) { return -fiber_value(t, p, std::exp(ls)); };
  const auto res = boost::math::tools::brent_find_minima(neg, std::log(s[best - 1]),
                                                         std::log(s[best + 1]), 52);
  FiberMax fm;
  fm.s = std::exp(res.first);
  fm.value = -res.second;
  if (fm.value < best_val) {
    fm.s = s[best];
    fm.value = best_val;
  }
  return fm;
}

FiberMax fiber_max(const RadialField& u, const ProblemParams& p, const SRange& range) {
  return fiber_max(term_integrals(u, p.q, p.theta), p, range);
}

std::vector<double> fiber_roots(const TermIntegrals& t, const ProblemParams& p,
                                const SRange& range) {
  validate_range(range);
  if (!(t.grad2 > 0.0 || t.quasi > 0.0 || t.lq > 0.0))
    throw std::invalid_argument("fiber_roots requires a non-zero field");
  const auto s = log_samples(range);
  std::vector<double> roots;
  auto f = [&](double ls) { return fiber_pohozaev(t, p, std::exp(ls)); };
  double prev = f(std::log(s[0]));
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double cur = f(std::log(s[i]));
    if (prev == 0.0) {
      roots.push_back(s[i - 1]);
    } else if ((prev < 0.0) != (cur < 0.0) && cur != 0.0) {
      // Relative tolerance 1e-8 in s equals an absolute 1e-8 in log s.
      auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-9; };
      const auto br = boost::math::tools::bisect(f, std::log(s[i - 1]), std::log(s[i]), tol);
      roots.push_back(std::exp(0.5 * (br.first + br.second)));
    }
    prev = cur;
  }
  return roots;
}

std::vector<double> fiber_roots(const RadialField& u, const ProblemParams& p, const SRange& range) {
  return fiber_roots(term_integrals(u, p.q, p.theta), p, range);
}

}  // namespace qnls
