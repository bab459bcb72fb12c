// SPDX-License-Identifier: Apache-2.0
#include "qnls/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_linalg.h>

#include "qnls/constants.hpp"

namespace qnls {

std::string to_string(Status s) {
  switch (s) {
    case Status::Converged: return "Converged";
    case Status::BoundaryHit: return "BoundaryHit";
    case Status::NoSolution: return "NoSolution";
    case Status::MaxIter: return "MaxIter";
  }
  return "MaxIter";
}

Status status_from_string(const std::string& s) {
  if (s == "Converged") return Status::Converged;
  if (s == "BoundaryHit") return Status::BoundaryHit;
  if (s == "NoSolution") return Status::NoSolution;
  if (s == "MaxIter") return Status::MaxIter;
  throw std::invalid_argument("unknown status: " + s);
}

std::string to_string(InitialGuess::Family f) {
  return f == InitialGuess::Family::Gaussian ? "gaussian" : "truncated_bubble";
}

void SolveConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be > 0");
  };
  positive(armijo, "solve.armijo");
  positive(step_init, "solve.step_init");
  positive(step_max, "solve.step_max");
  positive(grad_tol, "solve.grad_tol");
  positive(pohozaev_tol, "solve.pohozaev_tol");
  positive(mass_tol, "solve.mass_tol");
  positive(natural_tol, "solve.natural_tol");
  positive(precond_shift, "solve.precond_shift");
  if (!(step_shrink > 0.0 && step_shrink < 1.0)) throw std::invalid_argument("solve.step_shrink must lie in (0,1)");
  if (!(step_grow >= 1.0)) throw std::invalid_argument("solve.step_grow must be >= 1");
  if (max_iter < 0 || max_backtracks < 1) throw std::invalid_argument("solve.max_iter and max_backtracks must be positive");
  if (trace_stride < 1) throw std::invalid_argument("solve.trace_stride must be >= 1");
  if (rho0 && !(*rho0 > 0.0)) throw std::invalid_argument("solve.rho0 must be > 0");
  for (std::size_t i = 0; i < mu_schedule.size(); ++i) {
    if (!(mu_schedule[i] >= 0.0)) throw std::invalid_argument("mu schedule entries must be >= 0");
    if (i > 0 && !(mu_schedule[i] < mu_schedule[i - 1]))
      throw std::invalid_argument("mu schedule must be strictly decreasing");
  }
  if (guess.family == InitialGuess::Family::Gaussian && !(guess.width > 0.0))
    throw std::invalid_argument("solve.guess.width must be > 0");
  if (guess.family == InitialGuess::Family::TruncatedBubble && !(guess.eps > 0.0 && guess.eps < 1.0))
    throw std::invalid_argument("solve.guess.eps must lie in (0,1)");
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Tridiagonal stiffness of |grad u|^2 + 4 u^2|grad u|^2 (coefficient frozen at
// the current iterate) plus a multiple of the lumped mass matrix. The
// Dirichlet node is dropped, so the system has n-1 unknowns.
class Preconditioner {
public:
  Preconditioner(const RadialField& u, double shift) {
    const Grid& g = *u.grid;
    const auto& h = g.h();
    const auto& cell = g.cell_measure();
    const auto& w = g.weights();
    const std::size_t n = u.size();
    m_ = n - 1;
    diag_.assign(m_, 0.0);
    off_.assign(m_ - 1, 0.0);
    for (std::size_t i = 0; i < m_; ++i) diag_[i] = shift * w[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double a = u.values[i];
      const double b = i + 1 == n - 1 ? 0.0 : u.values[i + 1];
      const double k = cell[i] * (1.0 + 2.0 * (a * a + b * b)) / (h[i] * h[i]);
      diag_[i] += k;
      if (i + 1 < m_) {
        diag_[i + 1] += k;
        off_[i] -= k;
      }
    }
  }

  std::vector<double> solve(const std::vector<double>& rhs) const {
    std::vector<double> d = diag_, e = off_, b(rhs.begin(), rhs.begin() + m_), x(m_, 0.0);
    gsl_vector_view dv = gsl_vector_view_array(d.data(), m_);
    gsl_vector_view ev = gsl_vector_view_array(e.data(), m_ - 1);
    gsl_vector_view bv = gsl_vector_view_array(b.data(), m_);
    gsl_vector_view xv = gsl_vector_view_array(x.data(), m_);
    gsl_linalg_solve_symm_tridiag(&dv.vector, &ev.vector, &bv.vector, &xv.vector);
    x.push_back(0.0);
    return x;
  }

private:
  std::size_t m_ = 0;
  std::vector<double> diag_, off_;
};

struct Snapshot {
  TermIntegrals terms;
  std::vector<double> grad;
  double energy = 0.0;
  double lambda = 0.0;
  double residual = 0.0;
};

Snapshot snapshot(const RadialField& u, const ProblemParams& p) {
  Snapshot s;
  s.terms = term_integrals(u, p.q, p.theta);
  s.energy = breakdown_from_terms(s.terms, p).total_I;
  s.grad = energy_gradient(u, p);
  const auto& w = u.grid->weights();
  const double m = s.terms.mass;
  s.lambda = -dot(s.grad, u.values) / m;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (!(w[i] > 0.0)) continue;
    const double r = s.grad[i] / w[i] + s.lambda * u.values[i];
    acc += w[i] * r * r;
  }
  s.residual = std::sqrt(acc) / (std::sqrt(m) * (1.0 + std::abs(s.lambda)));
  return s;
}

// Residual of g = -lambda w u + nu gq in the lumped metric, with (lambda, nu)
// fitted by least squares; normalised like the one-constraint residual.
double tangent_residual(const RadialField& u, const std::vector<double>& g, const std::vector<double>& gq) {
  const auto& w = u.grid->weights();
  Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
  Eigen::Vector2d b = Eigen::Vector2d::Zero();
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (!(w[i] > 0.0)) continue;
    const Eigen::Vector2d a(u.values[i], -gq[i] / w[i]);
    A += w[i] * a * a.transpose();
    b -= w[i] * a * (g[i] / w[i]);
    m += w[i] * u.values[i] * u.values[i];
  }
  const Eigen::Vector2d x = A.fullPivLu().solve(b);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (!(w[i] > 0.0)) continue;
    const double r = g[i] / w[i] + x(0) * u.values[i] - x(1) * gq[i] / w[i];
    acc += w[i] * r * r;
  }
  return std::sqrt(acc) / (std::sqrt(m) * (1.0 + std::abs(x(0))));
}

double boundary_mass_fraction(const RadialField& u) {
  const auto& r = u.grid->r();
  const auto& w = u.grid->weights();
  const double edge = 0.8 * u.grid->r_max();
  double out = 0.0, total = 0.0;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double m = w[i] * u.values[i] * u.values[i];
    total += m;
    if (r[i] > edge) out += m;
  }
  return total > 0.0 ? out / total : 0.0;
}

void record(SolveDiagnostics& d, int it, const Snapshot& s, const ProblemParams& p) {
  d.trace_iteration.push_back(it);
  d.energy_trace.push_back(s.energy);
  d.theta_trace.push_back(p.mu * s.terms.theta_grad);
  d.residual_trace.push_back(s.residual);
}

void finalize(SolveReport& rep, const ProblemParams& p) {
  const RadialField& u = rep.profile;
  rep.terms = term_integrals(u, p.q, p.theta);
  rep.breakdown = breakdown_from_terms(rep.terms, p);
  rep.level = rep.breakdown.total_I;
  rep.mass = rep.terms.mass;
  rep.lambda_weak = multiplier_weak(rep.terms, p);
  rep.lambda_identity = multiplier_identity(rep.terms, p);
  rep.pohozaev_residual = normalized_pohozaev(rep.terms, p);
  rep.variational_residual = variational_residual(u, p);
  rep.weak_residual = weak_residual(u, rep.lambda_weak, p);
  rep.diagnostics.xi_final = xi_mu(rep.terms, p);
  rep.diagnostics.boundary_mass_fraction = boundary_mass_fraction(u);
}

RadialField start_field(const ProblemParams& p, const GridPtr& grid, const SolveConfig& cfg,
                        const RadialField* warm) {
  if (warm) {
    if (warm->grid.get() != grid.get() && warm->size() != grid->size())
      throw std::invalid_argument("warm start lives on a different grid");
    RadialField w(grid, warm->values);
    return mass_project(w, p.mass);
  }
  return initial_field(p, grid, cfg.guess);
}

// Newton steps on Q along the preconditioned Pohozaev gradient, with the
// mass direction removed, then mass projection. Returns false when |Q| does
// not drop to rounding level.
bool restore_pohozaev(RadialField& u, const ProblemParams& p, const Preconditioner& P) {
  const auto& w = u.grid->weights();
  for (int k = 0; k < 8; ++k) {
    const TermIntegrals t = term_integrals(u, p.q, p.theta);
    if (normalized_pohozaev(t, p) < 1e-13) return true;
    const double q = breakdown_from_terms(t, p).total_Q;
    const auto gq = pohozaev_gradient(u, p);
    std::vector<double> wu(u.size());
    for (std::size_t i = 0; i < wu.size(); ++i) wu[i] = w[i] * u.values[i];
    const auto dq = P.solve(gq);
    const auto du = P.solve(wu);
    const double c = dot(wu, dq) / dot(wu, du);
    std::vector<double> d(u.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = dq[i] - c * du[i];
    const double slope = dot(gq, d);
    if (!(std::abs(slope) > 0.0)) return false;
    for (std::size_t i = 0; i < d.size(); ++i) u.values[i] -= q / slope * d[i];
    u.values.back() = 0.0;
    u = mass_project(u, p.mass);
  }
  return normalized_pohozaev(term_integrals(u, p.q, p.theta), p) < 1e-11;
}

void check_inputs(const ProblemParams& p, const GridPtr& grid, const SolveConfig& cfg) {
  p.validate();
  cfg.validate();
  if (!grid) throw std::invalid_argument("solver requires a grid");
  if (grid->dim() != p.dim) throw std::invalid_argument("grid dimension differs from problem dimension");
}

}  // namespace

double variational_residual(const RadialField& u, const ProblemParams& p) {
  return snapshot(u, p).residual;
}

RadialField initial_field(const ProblemParams& p, const GridPtr& grid, const InitialGuess& g) {
  RadialField u;
  if (g.family == InitialGuess::Family::Gaussian) {
    u = RadialField::from_function(grid, [&](double r) { return std::exp(-(r / g.width) * (r / g.width)); });
  } else {
    const double alpha = g.alpha > 0.0 ? g.alpha : admissible_alpha(p.dim, p.q).midpoint();
    const double beta = solve_beta(g.eps, alpha, p.mass, p.dim, BetaMode::Asymptotic);
    const TruncatedBubbleSpec s{g.eps, alpha, beta};
    u = RadialField::from_function(grid, [&](double r) { return truncated_bubble_value(r, s, p.dim); });
  }
  u.values.back() = 0.0;
  return mass_project(u, p.mass);
}

SolveReport local_minimize(const ProblemParams& p, const GridPtr& grid, const SolveConfig& cfg,
                           const RadialField* warm_start) {
  check_inputs(p, grid, cfg);
  SolveReport rep;
  rep.pipeline = "local_minimize";
  rep.params = p;
  auto& diag = rep.diagnostics;
  const double N = p.dim;
  if (!(p.q < 2.0 + 4.0 / N)) {
    diag.exploratory = true;
    diag.notes.push_back("q outside (2, 2 + 4/N): local minimum not covered by the theory");
  }
  double rho0 = std::numeric_limits<double>::infinity();
  if (cfg.rho0) {
    rho0 = *cfg.rho0;
  } else if (p.tau > 0.0 && p.q < 4.0 + 4.0 / N) {
    const ThresholdSet t = thresholds(p);
    if (t.rho0) rho0 = *t.rho0;
    if (t.c0 && !(p.mass < *t.c0)) {
      diag.exploratory = true;
      diag.notes.push_back("c >= c0: the local region need not contain a minimiser");
    }
  } else {
    diag.notes.push_back("no region cap: rho0 undefined for these parameters");
  }
  diag.rho0 = rho0;

  RadialField u = start_field(p, grid, cfg, warm_start);
  const auto& w = grid->weights();
  double step = cfg.step_init;
  bool converged = false;
  bool boundary = false;
  bool stalled = false;
  int it = 0;
  Snapshot cur = snapshot(u, p);
  for (;; ++it) {
    const double xi = xi_mu(cur.terms, p);
    diag.max_xi = std::max(diag.max_xi, xi);
    const bool last = cur.residual < cfg.grad_tol || it >= cfg.max_iter || xi >= rho0;
    if (it % cfg.trace_stride == 0 || last) record(diag, it, cur, p);
    if (xi >= rho0) {
      boundary = true;
      break;
    }
    if (cur.residual < cfg.grad_tol) {
      converged = true;
      break;
    }
    if (it >= cfg.max_iter) break;
    if (boundary_mass_fraction(u) > 1e-2) {
      diag.notes.push_back("mass reached the outer boundary: the iterate is spreading out");
      break;
    }

    const Preconditioner P(u, cfg.precond_shift);
    std::vector<double> wu(u.size());
    for (std::size_t i = 0; i < wu.size(); ++i) wu[i] = w[i] * u.values[i];
    const auto dg = P.solve(cur.grad);
    const auto du = P.solve(wu);
    const double beta = dot(wu, dg) / dot(wu, du);
    std::vector<double> dir(u.size());
    for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = -(dg[i] - beta * du[i]);
    const double slope = dot(cur.grad, dir);

    bool accepted = false;
    for (int k = 0; k < cfg.max_backtracks; ++k) {
      RadialField trial = u;
      for (std::size_t i = 0; i < dir.size(); ++i) trial.values[i] += step * dir[i];
      trial.values.back() = 0.0;
      trial = mass_project(trial, p.mass);
      const TermIntegrals tt = term_integrals(trial, p.q, p.theta);
      const double e = breakdown_from_terms(tt, p).total_I;
      const double decrease = cfg.armijo * step * slope;
      if (e <= cur.energy + decrease) {
        u = std::move(trial);
        cur = snapshot(u, p);
        accepted = true;
        break;
      }
      // Near a minimiser the predicted decrease falls below the rounding
      // level of the energy; then accept any step that reduces the residual.
      if (std::abs(decrease) < 1e-13 * (std::abs(cur.energy) + 1.0)) {
        Snapshot s = snapshot(trial, p);
        if (s.residual < cur.residual) {
          u = std::move(trial);
          cur = std::move(s);
          accepted = true;
          break;
        }
      }
      step *= cfg.step_shrink;
    }
    if (!accepted) {
      stalled = true;
      diag.notes.push_back("line search stalled");
      break;
    }
    step = std::min(step * cfg.step_grow, cfg.step_max);
  }
  rep.iterations = it;
  rep.profile = u;
  finalize(rep, p);

  const bool vanishing = diag.boundary_mass_fraction > 1e-2;
  if (boundary) {
    rep.status = Status::BoundaryHit;
  } else if (rep.level >= 0.0 || vanishing || (converged && rep.lambda_identity <= 0.0)) {
    // A local minimiser has negative energy and a positive multiplier; a run
    // that ends elsewhere found no admissible solution.
    rep.status = Status::NoSolution;
    if (rep.level >= 0.0) diag.notes.push_back("energy is non-negative: no negative local minimum");
    if (converged && rep.lambda_identity <= 0.0) diag.notes.push_back("multiplier is non-positive");
  } else if (converged && rep.pohozaev_residual < cfg.pohozaev_tol &&
             std::abs(rep.mass - p.mass) <= cfg.mass_tol * std::max(1.0, p.mass)) {
    rep.status = Status::Converged;
  } else {
    rep.status = Status::MaxIter;
    if (converged) diag.notes.push_back("residual converged but the Pohozaev check failed");
    if (stalled) diag.notes.push_back("stopped before reaching the residual tolerance");
  }
  return rep;
}

SolveReport ground_state_level(const ProblemParams& p, const GridPtr& grid, const SolveConfig& cfg,
                               const RadialField* warm_start) {
  check_inputs(p, grid, cfg);
  SolveReport rep;
  rep.pipeline = "ground_state_level";
  rep.params = p;
  auto& diag = rep.diagnostics;
  const double N = p.dim;
  const double q_quasi = 4.0 + 4.0 / N;
  if (p.q < q_quasi) {
    diag.exploratory = true;
    diag.notes.push_back("q < 4 + 4/N: the fiber may have several critical points");
  } else if (p.q == q_quasi && p.tau > 0.0) {
    const ThresholdSet t = thresholds(p);
    if (t.cbar3 && !(p.mass < *t.cbar3)) {
      diag.exploratory = true;
      diag.notes.push_back("q = 4 + 4/N with c >= cbar3");
    }
  }
  diag.rho0 = std::numeric_limits<double>::infinity();

  RadialField u = start_field(p, grid, cfg, warm_start);
  {
    const FiberMax fm = fiber_max(u, p, cfg.fiber_initial);
    u = mass_project(dilate(u, fm.s), p.mass);
  }
  const auto& w = grid->weights();
  const auto qcoef = pohozaev_coefficients(p);
  double step = cfg.step_init;
  bool converged = false;
  bool stalled = false;
  int it = 0;
  Snapshot cur = snapshot(u, p);
  for (;; ++it) {
    const auto gq = functional_gradient(u, p, qcoef);
    const double qn = normalized_pohozaev(cur.terms, p);
    const double rt = tangent_residual(u, cur.grad, gq);
    diag.tangent_residual = rt;
    const bool done = rt < cfg.grad_tol && qn < cfg.grad_tol;
    if (it % cfg.trace_stride == 0 || done || it >= cfg.max_iter) {
      Snapshot shown = cur;
      shown.residual = rt;
      record(diag, it, shown, p);
    }
    if (done) {
      converged = true;
      break;
    }
    if (it >= cfg.max_iter) break;

    const Preconditioner P(u, cfg.precond_shift);
    std::vector<double> wu(u.size());
    for (std::size_t i = 0; i < wu.size(); ++i) wu[i] = w[i] * u.values[i];
    const auto dg = P.solve(cur.grad);
    const auto du = P.solve(wu);
    const auto dq = P.solve(gq);
    // Remove the components along the mass and Pohozaev normals in the
    // preconditioned metric.
    Eigen::Matrix2d G;
    G << dot(wu, du), dot(wu, dq), dot(gq, du), dot(gq, dq);
    const Eigen::Vector2d rhs(dot(wu, dg), dot(gq, dg));
    const Eigen::Vector2d ab = G.fullPivLu().solve(rhs);
    std::vector<double> dir(u.size());
    for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = -(dg[i] - ab(0) * du[i] - ab(1) * dq[i]);
    const double slope = dot(cur.grad, dir);

    bool accepted = false;
    for (int k = 0; k < cfg.max_backtracks; ++k) {
      RadialField trial = u;
      for (std::size_t i = 0; i < dir.size(); ++i) trial.values[i] += step * dir[i];
      trial.values.back() = 0.0;
      trial = mass_project(trial, p.mass);
      if (!restore_pohozaev(trial, p, P)) {
        // Newton did not settle: land on the fiber maximum by dilation.
        try {
          const FiberMax fm = fiber_max(trial, p, cfg.fiber_local);
          trial = mass_project(dilate(trial, fm.s), p.mass);
        } catch (const BracketError&) {
          step *= cfg.step_shrink;
          continue;
        }
      }
      // On Q = 0 the energy equals the fiber maximum, so the Armijo test
      // runs on I directly. Below its rounding level the test is blind and
      // a smaller residual decides instead.
      Snapshot s = snapshot(trial, p);
      const double decrease = cfg.armijo * step * slope;
      const bool armijo_ok = s.energy <= cur.energy + decrease;
      bool blind = std::abs(decrease) < 1e-13 * (std::abs(cur.energy) + 1.0);
      if (!armijo_ok && blind &&
          tangent_residual(trial, s.grad, functional_gradient(trial, p, qcoef)) >= diag.tangent_residual)
        blind = false;
      if (armijo_ok || blind) {
        u = std::move(trial);
        cur = std::move(s);
        accepted = true;
        break;
      }
      step *= cfg.step_shrink;
    }
    if (!accepted) {
      stalled = true;
      diag.notes.push_back("line search stalled");
      break;
    }
    step = std::min(step * cfg.step_grow, cfg.step_max);
  }
  rep.iterations = it;
  rep.profile = u;
  finalize(rep, p);
  try {
    const FiberMax fm = fiber_max(rep.terms, p, cfg.fiber_initial);
    diag.fiber_s = fm.s;
    diag.fiber_critical_points = static_cast<int>(fiber_roots(rep.terms, p, cfg.fiber_initial).size());
  } catch (const BracketError&) {
    diag.notes.push_back("final fiber has no interior maximum");
  }
  const bool consistent = rep.variational_residual < cfg.natural_tol;
  if (converged && consistent && rep.pohozaev_residual < cfg.pohozaev_tol &&
      std::abs(rep.mass - p.mass) <= cfg.mass_tol * std::max(1.0, p.mass)) {
    rep.status = Status::Converged;
  } else {
    rep.status = Status::MaxIter;
    if (stalled) diag.notes.push_back("stopped before reaching the residual tolerance");
    if (converged && !consistent)
      diag.notes.push_back("stationary on the Pohozaev set but not a critical point of I on S(c) at this resolution");
  }
  if (diag.boundary_mass_fraction > 1e-2) diag.notes.push_back("mass reached the outer boundary");
  if (rep.lambda_weak <= 0.0) diag.notes.push_back("multiplier is non-positive");
  return rep;
}

Pipeline pipeline_for(const ProblemParams& p) {
  const double N = p.dim;
  if (p.q < 2.0 + 4.0 / N) return Pipeline::LocalMin;
  if (p.q >= 4.0 + 4.0 / N) return Pipeline::GroundState;
  std::ostringstream os;
  os << "no solver pipeline for 2 + 4/N <= q < 4 + 4/N (q = " << p.q
     << "); use path_energy_bound for this band";
  throw std::invalid_argument(os.str());
}

std::vector<SolveReport> mu_continuation(const ProblemParams& p, const GridPtr& grid, const SolveConfig& cfg) {
  cfg.validate();
  if (cfg.mu_schedule.empty()) throw std::invalid_argument("continuation requires a non-empty mu schedule");
  const Pipeline pl = pipeline_for(p);
  std::vector<SolveReport> out;
  const RadialField* warm = nullptr;
  RadialField prev;
  for (double mu : cfg.mu_schedule) {
    ProblemParams stage = p;
    stage.mu = mu;
    SolveReport r = pl == Pipeline::LocalMin ? local_minimize(stage, grid, cfg, warm)
                                             : ground_state_level(stage, grid, cfg, warm);
    const bool ok = r.status == Status::Converged;
    prev = r.profile;
    warm = &prev;
    out.push_back(std::move(r));
    if (!ok) break;
  }
  return out;
}

double nonexistence_rhs(const RadialField& u, const ProblemParams& p) {
  const TermIntegrals t = term_integrals(u, p.q, p.theta);
  const double N = p.dim;
  return p.tau * (4.0 * N - (N - 2.0) * p.q) / ((N + 2.0) * p.q) * t.lq - (N - 2.0) / (N + 2.0) * t.grad2;
}

NonexistenceCertificate nonexistence_check(const ProblemParams& p, const std::vector<RadialField>& fields,
                                           const std::vector<SolveReport>& attempts,
                                           const std::vector<std::string>& labels) {
  if (p.tau > 0.0) throw std::invalid_argument("nonexistence_check requires tau <= 0");
  const double upper = p.critical_exponent();
  if (!(p.q > 2.0 && p.q < upper)) throw std::invalid_argument("nonexistence_check requires 2 < q < 2*2^*");
  NonexistenceCertificate c;
  c.params = p;
  c.identity_nonpositive = true;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    NonexistenceEntry e;
    e.label = i < labels.size() ? labels[i] : "field-" + std::to_string(i);
    e.rhs = nonexistence_rhs(fields[i], p);
    e.nonpositive = e.rhs <= 0.0;
    c.identity_nonpositive = c.identity_nonpositive && e.nonpositive;
    c.fields.push_back(std::move(e));
  }
  c.solvers_consistent = true;
  for (const auto& r : attempts) {
    c.solver_statuses.push_back(r.status);
    c.solver_lambdas.push_back(r.lambda_identity);
    if (r.status == Status::Converged && r.lambda_identity > 0.0) c.solvers_consistent = false;
  }
  return c;
}

}  // namespace qnls
