// SPDX-License-Identifier: Apache-2.0
#include "qnls/bubbles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "qnls/constants.hpp"

namespace qnls {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

double quad(const std::function<double(double)>& f, double a, double b) {
  if (!(b > a)) return 0.0;
  return GK::integrate(f, a, b, 12, 1e-11);
}

// Geometric breakpoints from sqrt(eps) up to `stop`, so each panel sees one
// decade of the core scale.
std::vector<double> core_breaks(double eps, double stop) {
  std::vector<double> b{0.0};
  for (double x = std::sqrt(eps); x < stop; x *= 4.0) b.push_back(x);
  b.push_back(stop);
  return b;
}

double ramp_height(const TruncatedBubbleSpec& s, int dim) {
  const double e = s.eps;
  return bubble_prefactor(dim) *
         std::pow(std::pow(e, 2.0 * s.alpha + 0.5) / (1.0 + std::pow(e, 2.0 * s.alpha + 1.0)),
                  0.25 * (dim - 2.0));
}

void require_dim(int dim) {
  if (dim < 3) throw std::invalid_argument("bubbles require N >= 3");
}

}  // namespace

void BubbleSpec::validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("bubble requires eps > 0");
  if (cutoff_inner != 1.0 || cutoff_outer != 2.0)
    throw std::invalid_argument("cut-off radii are fixed at 1 and 2");
}

void TruncatedBubbleSpec::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("truncated bubble requires 0 < eps < 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("truncated bubble requires alpha > 0");
  if (!(beta > alpha)) throw std::invalid_argument("truncated bubble requires beta > alpha");
}

AlphaInterval alpha_interval(int dim, double q, bool large_coupling) {
  require_dim(dim);
  const double N = dim;
  const double shift = large_coupling ? 12.0 * N : 4.0 * N;
  AlphaInterval a;
  a.large_coupling = large_coupling;
  a.lo = std::max((4.0 * N * N - shift + 8.0 - N * (N - 2.0) * q) / (16.0 * (N - 2.0)), 0.0);
  a.hi = (N - 2.0) / 8.0;
  return a;
}

AlphaInterval admissible_alpha(int dim, double q) {
  const AlphaInterval plain = alpha_interval(dim, q, false);
  return plain.empty() ? alpha_interval(dim, q, true) : plain;
}

double bubble_prefactor(int dim) {
  const double N = dim;
  return std::pow(N * (N - 2.0), (N - 2.0) / 8.0);
}

double cutoff(double r, double inner, double outer) {
  if (r <= inner) return 1.0;
  if (r >= outer) return 0.0;
  const double x = (r - inner) / (outer - inner);
  return 1.0 - x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
}

double cutoff_derivative(double r, double inner, double outer) {
  if (r <= inner || r >= outer) return 0.0;
  const double w = outer - inner;
  const double x = (r - inner) / w;
  return -30.0 * x * x * (1.0 - x) * (1.0 - x) / w;
}

double aubin_talenti(double r, double eps, int dim) {
  const double N = dim;
  return std::pow(N * (N - 2.0) * eps, (N - 2.0) / 8.0) / std::pow(eps + r * r, (N - 2.0) / 4.0);
}

double aubin_talenti_derivative(double r, double eps, int dim) {
  const double N = dim;
  return -0.5 * (N - 2.0) * r * std::pow(N * (N - 2.0) * eps, (N - 2.0) / 8.0) /
         std::pow(eps + r * r, (N + 2.0) / 4.0);
}

double cutoff_bubble(double r, const BubbleSpec& s, int dim) {
  return cutoff(r, s.cutoff_inner, s.cutoff_outer) * aubin_talenti(r, s.eps, dim);
}

double cutoff_bubble_derivative(double r, const BubbleSpec& s, int dim) {
  return cutoff_derivative(r, s.cutoff_inner, s.cutoff_outer) * aubin_talenti(r, s.eps, dim) +
         cutoff(r, s.cutoff_inner, s.cutoff_outer) * aubin_talenti_derivative(r, s.eps, dim);
}

double truncated_bubble_value(double r, const TruncatedBubbleSpec& s, int dim) {
  const double ra = std::pow(s.eps, -s.alpha);
  const double rb = std::pow(s.eps, -s.beta);
  if (r < ra) {
    return bubble_prefactor(dim) * std::pow(std::sqrt(s.eps) / (s.eps + r * r), 0.25 * (dim - 2.0));
  }
  if (r < rb) {
    return ramp_height(s, dim) * (1.0 - std::pow(s.eps, s.beta) * r) /
           (1.0 - std::pow(s.eps, s.beta - s.alpha));
  }
  return 0.0;
}

double truncated_bubble_derivative(double r, const TruncatedBubbleSpec& s, int dim) {
  const double ra = std::pow(s.eps, -s.alpha);
  const double rb = std::pow(s.eps, -s.beta);
  if (r < ra) return aubin_talenti_derivative(r, s.eps, dim);
  if (r < rb) return -ramp_height(s, dim) * std::pow(s.eps, s.beta) / (1.0 - std::pow(s.eps, s.beta - s.alpha));
  return 0.0;
}

namespace {

void check_core_resolution(const Grid& g, double eps) {
  const double core = std::sqrt(eps);
  const auto& r = g.r();
  const auto inside = std::count_if(r.begin(), r.end(), [&](double x) { return x < core; });
  if (inside < kBubbleCoreNodes) {
    std::ostringstream os;
    os << "grid under-resolves the bubble core: " << inside << " nodes inside r < sqrt(eps) = " << core
       << ", at least " << kBubbleCoreNodes << " required";
    throw ResolutionError(os.str());
  }
}

}  // namespace

RadialField bubble(const BubbleSpec& spec, const GridPtr& grid) {
  spec.validate();
  if (!grid) throw std::invalid_argument("bubble requires a grid");
  check_core_resolution(*grid, spec.eps);
  if (grid->r_max() <= spec.cutoff_outer) throw ResolutionError("grid must extend beyond the cut-off radius 2");
  const int dim = grid->dim();
  return RadialField::from_function(grid, [&](double r) { return cutoff_bubble(r, spec, dim); });
}

RadialField truncated_bubble(const TruncatedBubbleSpec& spec, const GridPtr& grid) {
  spec.validate();
  if (!grid) throw std::invalid_argument("truncated_bubble requires a grid");
  check_core_resolution(*grid, spec.eps);
  const double rb = std::pow(spec.eps, -spec.beta);
  if (grid->r_max() <= rb) {
    std::ostringstream os;
    os << "grid ends at r_max = " << grid->r_max() << " before the support radius eps^{-beta} = " << rb;
    throw ResolutionError(os.str());
  }
  const int dim = grid->dim();
  return RadialField::from_function(grid, [&](double r) { return truncated_bubble_value(r, spec, dim); });
}

ProfileIntegrals profile_integrals(const std::function<double(double)>& u,
                                   const std::function<double(double)>& du,
                                   const std::vector<double>& breaks, int dim, double q,
                                   double theta, double r_extra) {
  require_dim(dim);
  const double N = dim;
  const double crit = 4.0 * N / (N - 2.0);
  const double omega = sphere_area(dim);
  ProfileIntegrals out;
  auto add = [&](double& acc, const std::function<double(double)>& f) {
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
      acc += omega * quad([&](double r) { return f(r) * std::pow(r, N - 1.0); }, breaks[k], breaks[k + 1]);
  };
  auto& t = out.terms;
  add(t.theta_grad, [&](double r) { return std::pow(std::abs(du(r)), theta); });
  add(t.grad2, [&](double r) { return du(r) * du(r); });
  add(t.quasi, [&](double r) { return u(r) * u(r) * du(r) * du(r); });
  add(t.lq, [&](double r) { return std::pow(std::abs(u(r)), q); });
  add(t.crit, [&](double r) { return std::pow(std::abs(u(r)), crit); });
  add(t.mass, [&](double r) { return u(r) * u(r); });
  add(out.lr, [&](double r) { return std::pow(std::abs(u(r)), r_extra); });
  return out;
}

ProfileIntegrals cutoff_bubble_integrals(const BubbleSpec& s, int dim, double q, double theta,
                                         double r_extra) {
  s.validate();
  auto b = core_breaks(s.eps, s.cutoff_inner);
  b.push_back(s.cutoff_outer);
  return profile_integrals([&](double r) { return cutoff_bubble(r, s, dim); },
                           [&](double r) { return cutoff_bubble_derivative(r, s, dim); }, b, dim, q,
                           theta, r_extra);
}

ProfileIntegrals truncated_bubble_integrals(const TruncatedBubbleSpec& s, int dim, double q,
                                            double theta) {
  s.validate();
  auto b = core_breaks(s.eps, std::pow(s.eps, -s.alpha));
  b.push_back(std::pow(s.eps, -s.beta));
  return profile_integrals([&](double r) { return truncated_bubble_value(r, s, dim); },
                           [&](double r) { return truncated_bubble_derivative(r, s, dim); }, b, dim, q,
                           theta);
}

double ramp_mass_closed_form(const TruncatedBubbleSpec& s, int dim) {
  const double N = dim;
  const double a = std::pow(s.eps, -s.alpha);
  const double b = std::pow(s.eps, -s.beta);
  const double h = ramp_height(s, dim);
  const double num = 2.0 * std::pow(b, N + 2.0) -
                     (N * (N + 1.0) * a * a - 2.0 * N * (N + 2.0) * a * b + (N + 1.0) * (N + 2.0) * b * b) *
                         std::pow(a, N);
  return sphere_area(dim) * h * h * num / (N * (N + 1.0) * (N + 2.0) * (b - a) * (b - a));
}

double solve_beta(double eps, double alpha, double mass, int dim, BetaMode mode) {
  require_dim(dim);
  if (!(eps > 0.0 && eps < 1.0) || !(alpha > 0.0) || !(mass > 0.0))
    throw std::invalid_argument("solve_beta requires 0 < eps < 1, alpha > 0, mass > 0");
  const double N = dim;
  const double omega = sphere_area(dim);
  const double B = bubble_prefactor(dim);
  if (mode == BetaMode::Asymptotic) {
    const double a = (4.0 * alpha + 1.0) * (N - 2.0) / (4.0 * N);
    const double K = std::pow(N * (N + 1.0) * (N + 2.0) * mass / (2.0 * omega * B * B), 1.0 / N);
    const double beta = a - std::log(K) / std::log(eps);
    if (!(beta > alpha)) throw std::runtime_error("asymptotic beta does not exceed alpha; eps too large");
    return beta;
  }
  TruncatedBubbleSpec s{eps, alpha, alpha};
  const double ra = std::pow(eps, -alpha);
  double core = 0.0;
  for (const auto& piece : [&] {
         auto br = core_breaks(eps, ra);
         std::vector<std::pair<double, double>> out;
         for (std::size_t k = 0; k + 1 < br.size(); ++k) out.emplace_back(br[k], br[k + 1]);
         return out;
       }()) {
    core += omega * quad([&](double r) {
      const double u = B * std::pow(std::sqrt(eps) / (eps + r * r), 0.25 * (N - 2.0));
      return u * u * std::pow(r, N - 1.0);
    }, piece.first, piece.second);
  }
  if (core >= mass) {
    std::ostringstream os;
    os << "core mass " << core << " already exceeds the target " << mass << "; no beta > alpha exists";
    throw std::runtime_error(os.str());
  }
  auto total = [&](double beta) {
    s.beta = beta;
    const double rb = std::pow(eps, -beta);
    const double h = ramp_height(s, dim);
    const double scale = 1.0 - std::pow(eps, beta - alpha);
    const double ramp = omega * quad([&](double r) {
      const double v = h * (1.0 - r / rb) / scale;
      return v * v * std::pow(r, N - 1.0);
    }, ra, rb);
    return core + ramp - mass;
  };
  double lo = alpha * (1.0 + 1e-9) + 1e-12;
  double hi = alpha + 0.1;
  while (total(hi) < 0.0) {
    hi += 0.5;
    if (hi > alpha + 50.0) throw std::runtime_error("solve_beta could not bracket the mass");
  }
  if (total(lo) > 0.0) throw std::runtime_error("solve_beta: mass exceeded at beta -> alpha");
  std::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(50);
  const auto br = boost::math::tools::toms748_solve(total, lo, hi, tol, iters);
  return 0.5 * (br.first + br.second);
}

const EstimateRow& EstimateTable::row(const std::string& name) const {
  for (const auto& r : rows)
    if (r.quantity == name) return r;
  throw std::out_of_range("no estimate row named " + name);
}

std::pair<double, double> fit_power(const std::vector<double>& eps, const std::vector<double>& dev) {
  if (eps.size() != dev.size() || eps.size() < 2) throw std::invalid_argument("fit_power needs matching samples");
  const std::size_t n = eps.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(dev[i] > 0.0)) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    x[i] = std::log(eps[i]);
    y[i] = std::log(dev[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return {slope, r2};
}

namespace {

void finish_row(EstimateRow& row, const std::vector<double>& eps) {
  const auto [slope, r2] = fit_power(eps, row.deviation);
  row.fitted = slope;
  row.r_squared = r2;
  row.low_fit_quality = !(r2 >= 0.9);
  if (!std::isfinite(slope)) {
    row.within_band = false;
  } else if (row.lower_bound) {
    row.within_band = slope <= row.expected * (1.0 + row.band);
  } else {
    row.within_band = std::abs(slope - row.expected) <= row.band * std::abs(row.expected);
  }
}

EstimateRow make_row(std::string name, std::string limit, double expected, bool log_corrected = false,
                     bool lower_bound = false) {
  EstimateRow r;
  r.quantity = std::move(name);
  r.limit = std::move(limit);
  r.expected = expected;
  r.log_corrected = log_corrected;
  r.lower_bound = lower_bound;
  r.band = log_corrected ? 0.30 : 0.15;
  return r;
}

}  // namespace

EstimateTable estimate_suite(BubbleKind kind, const std::vector<double>& eps_schedule,
                             const EstimateOptions& opt) {
  require_dim(opt.dim);
  if (eps_schedule.size() < 4) throw std::invalid_argument("estimate_suite needs at least 4 eps values");
  const auto [mn, mx] = std::minmax_element(eps_schedule.begin(), eps_schedule.end());
  if (std::log10(*mx / *mn) < 3.0 - 1e-9)
    throw std::invalid_argument("estimate_suite needs an eps schedule spanning at least 3 decades");
  for (double e : eps_schedule)
    if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("eps values must lie in (0, 1)");

  const double N = opt.dim;
  const double theta = opt.theta > 0.0 ? opt.theta : default_theta(opt.dim);
  const double ss = 2.0 * N / (N - 2.0);
  EstimateTable tab;
  tab.kind = kind;
  tab.eps = eps_schedule;
  tab.sobolev_level = std::pow(sobolev_constant(opt.dim), 0.5 * N);
  const double SN = tab.sobolev_level;

  if (kind == BubbleKind::Cutoff) {
    const double r_hi = 3.0 * N / (N - 2.0);
    auto quasi = make_row("quasi_gradient", "S^{N/2}", 0.5 * (N - 2.0));
    auto crit = make_row("critical", "S^{N/2}", 0.5 * N);
    auto grad = make_row("gradient", "0", 0.25 * (N - 2.0), true);
    auto lr_hi = make_row("lr_supercritical", "0", 0.5 * N - (N - 2.0) * r_hi / 8.0);
    auto lr_s = make_row("lr_sobolev", "0", 0.25 * N, true);
    auto mass = make_row("mass", "0", 0.25 * (N - 2.0));
    for (double e : eps_schedule) {
      const BubbleSpec s{e};
      const auto pi = cutoff_bubble_integrals(s, opt.dim, r_hi, theta, ss);
      const double q4 = 4.0 * pi.terms.quasi;
      quasi.values.push_back(q4);
      quasi.deviation.push_back(std::abs(q4 - SN));
      crit.values.push_back(pi.terms.crit);
      crit.deviation.push_back(std::abs(pi.terms.crit - SN));
      grad.values.push_back(pi.terms.grad2);
      grad.deviation.push_back(pi.terms.grad2);
      lr_hi.values.push_back(pi.terms.lq);
      lr_hi.deviation.push_back(pi.terms.lq);
      lr_s.values.push_back(pi.lr);
      lr_s.deviation.push_back(pi.lr);
      mass.values.push_back(pi.terms.mass);
      mass.deviation.push_back(pi.terms.mass);
    }
    for (auto* r : {&quasi, &crit, &grad, &lr_hi, &lr_s, &mass}) {
      finish_row(*r, eps_schedule);
      tab.rows.push_back(std::move(*r));
    }
    return tab;
  }

  const AlphaInterval win = admissible_alpha(opt.dim, opt.q);
  tab.alpha = opt.alpha > 0.0 ? opt.alpha : win.midpoint();
  const double a4 = 4.0 * tab.alpha + 1.0;
  auto grad = make_row("gradient", "0", a4 * (N - 2.0) / (2.0 * N));
  auto crit = make_row("critical", "S^{N/2}", a4 * (N + 2.0) / 4.0);
  auto quasi = make_row("quasi_gradient", "S^{N/2}", a4 * (N * N - 4.0) / (4.0 * N));
  auto lq = make_row("lq", "0", 0.5 * N - (N - 2.0) * opt.q / 8.0, false, true);
  auto mass = make_row("mass", "c", 0.0);
  for (double e : eps_schedule) {
    const double beta = solve_beta(e, tab.alpha, opt.mass, opt.dim, opt.beta_mode);
    tab.beta.push_back(beta);
    const TruncatedBubbleSpec s{e, tab.alpha, beta};
    const auto pi = truncated_bubble_integrals(s, opt.dim, opt.q, theta);
    grad.values.push_back(pi.terms.grad2);
    grad.deviation.push_back(pi.terms.grad2);
    crit.values.push_back(pi.terms.crit);
    crit.deviation.push_back(std::abs(pi.terms.crit - SN));
    const double q4 = 4.0 * pi.terms.quasi;
    quasi.values.push_back(q4);
    quasi.deviation.push_back(std::abs(q4 - SN));
    lq.values.push_back(pi.terms.lq);
    lq.deviation.push_back(pi.terms.lq);
    mass.values.push_back(pi.terms.mass);
    mass.deviation.push_back(std::abs(pi.terms.mass - opt.mass));
  }
  for (auto* r : {&grad, &crit, &quasi, &lq}) {
    finish_row(*r, eps_schedule);
    tab.rows.push_back(std::move(*r));
  }
  // The mass carries no predicted rate: it is pinned to c by the choice of
  // beta. Record the fit for information and judge it by the limit alone.
  const auto [slope, r2] = fit_power(eps_schedule, mass.deviation);
  mass.fitted = slope;
  mass.r_squared = r2;
  mass.expected = std::numeric_limits<double>::quiet_NaN();
  double worst = 0.0;
  for (double d : mass.deviation) worst = std::max(worst, d);
  mass.within_band = opt.beta_mode == BetaMode::Exact ? worst <= 1e-8 * opt.mass
                                                      : mass.deviation.back() <= mass.deviation.front();
  tab.rows.push_back(std::move(mass));
  return tab;
}

}  // namespace qnls
