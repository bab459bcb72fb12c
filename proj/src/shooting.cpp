// SPDX-License-Identifier: Apache-2.0
#include "qnls/shooting.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

namespace qnls {

namespace {

namespace odeint = boost::numeric::odeint;

// u, u', then the running integrals of u, u^2, |u'|^2 and |u|^exponent
// against r^{N-1} dr.
using State = std::array<double, 6>;

enum class Outcome { Crossed, Turned, Survived };

constexpr double kSampleStep = 2e-3;

struct System {
  GroundStateKind kind;
  double exponent;
  int dim;

  // Right-hand side of Delta u = f(u).
  double source(double u) const {
    if (kind == GroundStateKind::QuasiCompact) {
      const double up = u > 0.0 ? std::pow(u, 0.5 * exponent - 1.0) : 0.0;
      return 1.0 - up;
    }
    return u - std::copysign(std::pow(std::abs(u), exponent - 1.0), u);
  }

  void operator()(const State& y, State& dy, double r) const {
    const double u = y[0];
    const double up = y[1];
    const double rn = std::pow(r, dim - 1);
    dy[0] = up;
    dy[1] = source(u) - (dim - 1.0) * up / r;
    const double pos = u > 0.0 ? u : 0.0;
    dy[2] = pos * rn;
    dy[3] = u * u * rn;
    dy[4] = up * up * rn;
    dy[5] = std::pow(pos, exponent) * rn;
  }
};

struct Trajectory {
  Outcome outcome = Outcome::Survived;
  double event_r = 0.0;
  State event_state{};
  std::vector<double> r, u, du;
};

// Integrates from the series start until the profile crosses zero, turns
// upward, or reaches the radius cap. Samples are recorded on a uniform mesh
// only when `record` is set.
Trajectory integrate(const System& sys, double height, const ShootingOptions& opt, bool record) {
  const double f0 = sys.source(height);
  const double r0 = 1e-5;
  State y{};
  y[0] = height + f0 * r0 * r0 / (2.0 * sys.dim);
  y[1] = f0 * r0 / sys.dim;
  auto stepper = odeint::make_dense_output(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_dopri5<State>());
  stepper.initialize(y, r0, 1e-4);

  Trajectory tr;
  if (record) {
    tr.r.push_back(0.0);
    tr.u.push_back(height);
    tr.du.push_back(0.0);
  }
  double next_sample = kSampleStep;
  State tmp{};

  auto event_of = [&](const State& s) -> Outcome {
    if (s[0] <= 0.0) return Outcome::Crossed;
    if (s[1] >= 0.0) return Outcome::Turned;
    return Outcome::Survived;
  };

  while (stepper.current_time() < opt.r_cap) {
    const auto span = stepper.do_step(sys);
    const State& cur = stepper.current_state();
    const Outcome ev = event_of(cur);
    double stop = span.second;
    if (ev != Outcome::Survived) {
      // Locate the first event inside the step by bisection on the dense output.
      double a = span.first;
      double b = span.second;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        stepper.calc_state(m, tmp);
        if (event_of(tmp) != Outcome::Survived) {
          b = m;
        } else {
          a = m;
        }
      }
      stop = b;
      stepper.calc_state(b, tr.event_state);
      tr.event_r = b;
      tr.outcome = event_of(tr.event_state);
    }
    if (record) {
      while (next_sample < stop) {
        stepper.calc_state(next_sample, tmp);
        tr.r.push_back(next_sample);
        tr.u.push_back(tmp[0]);
        tr.du.push_back(tmp[1]);
        next_sample += kSampleStep;
      }
    }
    if (ev != Outcome::Survived) {
      if (record) {
        tr.r.push_back(tr.event_r);
        tr.u.push_back(tr.event_state[0]);
        tr.du.push_back(tr.event_state[1]);
      }
      return tr;
    }
  }
  tr.outcome = Outcome::Survived;
  tr.event_r = stepper.current_time();
  tr.event_state = stepper.current_state();
  return tr;
}

struct SplineDeleter {
  void operator()(gsl_spline* s) const { gsl_spline_free(s); }
};

}  // namespace

ShootingResult shoot_ground_state(GroundStateKind kind, double exponent, int dim,
                                  const ShootingOptions& opt) {
  if (dim < 3) throw std::invalid_argument("shooting requires N >= 3");
  const System sys{kind, exponent, dim};

  // Heights with source(height) >= 0 start upward and count as "low".
  double lo = 1.0;
  double hi = 2.0;
  auto too_high = [&](double a) { return integrate(sys, a, opt, false).outcome == Outcome::Crossed; };
  while (!too_high(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > opt.height_cap) {
      std::ostringstream os;
      os << "no crossing trajectory for heights in [1, " << opt.height_cap << "]";
      throw ShootingError(os.str());
    }
  }
  ShootingResult res;
  while ((hi - lo) > opt.height_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (too_high(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
    ++res.bisection_steps;
  }
  res.kind = kind;
  res.dim = dim;
  res.exponent = exponent;
  res.height_lo = lo;
  res.height_hi = hi;
  res.height = lo;

  // The low-side trajectory stays positive up to its turning point, which
  // approximates the support edge (compact case) or the resolved tail.
  Trajectory tr = integrate(sys, lo, opt, true);
  if (tr.outcome == Outcome::Survived)
    throw ShootingError("bracketed trajectory neither crossed nor turned before r_cap");
  res.edge = tr.event_r;
  res.r = std::move(tr.r);
  res.u = std::move(tr.u);
  res.du = std::move(tr.du);
  const double omega = sphere_area(dim);
  double l1 = tr.event_state[2];
  double l2 = tr.event_state[3];
  double g2 = tr.event_state[4];
  double lp = tr.event_state[5];

  if (kind == GroundStateKind::ClassicDecaying) {
    // Beyond the cut the profile decays like r^{-(N-1)/2} e^{-r}; add that
    // tail analytically (by quadrature of the model) so tail-sensitive
    // integrals are not truncated.
    const double re = res.edge;
    const double ue = std::max(tr.event_state[0], 0.0);
    res.tail_resolved = ue <= 1e-6 * res.height;
    auto model = [&](double r) { return ue * std::pow(re / r, 0.5 * (dim - 1)) * std::exp(-(r - re)); };
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    auto tail = [&](auto&& g) { return GK::integrate(g, re, re + 80.0, 8, 1e-12); };
    l1 += tail([&](double r) { return model(r) * std::pow(r, dim - 1); });
    l2 += tail([&](double r) { return std::pow(model(r), 2) * std::pow(r, dim - 1); });
    g2 += tail([&](double r) {
      const double d = model(r) * (1.0 + 0.5 * (dim - 1) / r);
      return d * d * std::pow(r, dim - 1);
    });
    lp += tail([&](double r) { return std::pow(model(r), exponent) * std::pow(r, dim - 1); });
  }
  res.l1 = omega * l1;
  res.l2sq = omega * l2;
  res.grad2 = omega * g2;
  res.lp = omega * lp;
  return res;
}

RadialField ShootingResult::sample(const GridPtr& grid) const {
  static const bool gsl_quiet = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)gsl_quiet;
  std::unique_ptr<gsl_spline, SplineDeleter> spline(gsl_spline_alloc(gsl_interp_cspline, r.size()));
  gsl_spline_init(spline.get(), r.data(), u.data(), r.size());
  const double ue = u.back();
  return RadialField::from_function(grid, [&](double x) {
    if (x <= edge) return std::max(gsl_spline_eval(spline.get(), x, nullptr), 0.0);
    if (kind == GroundStateKind::QuasiCompact) return 0.0;
    return std::max(ue, 0.0) * std::pow(edge / x, 0.5 * (dim - 1)) * std::exp(-(x - edge));
  });
}

double ShootingResult::ode_residual() const {
  const System sys{kind, exponent, dim};
  double worst = 0.0;
  // Uniform interior samples only (the final point is the event location);
  // five-point stencil keeps the truncation error near 1e-11. Stencils that
  // touch the last 1e-4 of the height are skipped: u^{p/2-1} is not smooth
  // at u = 0, so finite differences there measure the stencil, not the ODE.
  const std::size_t n = r.size();
  const double floor = 1e-4 * height;
  for (std::size_t i = 2; i + 3 < n; ++i) {
    if (u[i + 2] < floor) break;
    const double h = r[i + 1] - r[i];
    const double d2 = (-du[i + 2] + 8.0 * du[i + 1] - 8.0 * du[i - 1] + du[i - 2]) / (12.0 * h);
    const double res = d2 + (dim - 1.0) * du[i] / r[i] - sys.source(u[i]);
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

}  // namespace qnls
