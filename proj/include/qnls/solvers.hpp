// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnls/bubbles.hpp"
#include "qnls/functionals.hpp"
#include "qnls/scaling.hpp"

namespace qnls {

enum class Status { Converged, BoundaryHit, NoSolution, MaxIter };
std::string to_string(Status s);
Status status_from_string(const std::string& s);

/// Starting profile before mass projection.
struct InitialGuess {
  enum class Family { Gaussian, TruncatedBubble };
  Family family = Family::Gaussian;
  double width = 5.0;   ///< Gaussian exp(-(r/width)^2)
  double eps = 1e-2;    ///< truncated-bubble concentration
  double alpha = -1.0;  ///< truncated-bubble alpha (< 0: admissible midpoint)
};
std::string to_string(InitialGuess::Family f);

struct SolveConfig {
  // Backtracking rule.
  double armijo = 1e-4;
  double step_init = 1.0;
  double step_grow = 1.5;
  double step_shrink = 0.5;
  double step_max = 10.0;
  int max_backtracks = 60;
  double precond_shift = 1.0;  ///< weight of the mass matrix in the preconditioner

  int max_iter = 20000;
  /// Stop when the discrete variational residual |g/w + lambda u| / (sqrt(c)(1+|lambda|)) drops below this.
  double grad_tol = 1e-7;
  /// Normalised |Q| must also be below this for Converged.
  double pohozaev_tol = 1e-3;
  double mass_tol = 1e-10;
  /// Ground states stop on the residual with mass and Pohozaev normals
  /// removed; the plain mass-constrained residual must still fall below this
  /// for Converged. On a grid Q = 0 is only approximately a natural
  /// constraint, so this gap measures resolution.
  double natural_tol = 1e-3;

  /// Cap on xi_mu for the local-minimum region; empty = computed rho0.
  std::optional<double> rho0;
  /// Strictly decreasing mu values for continuation.
  std::vector<double> mu_schedule;
  InitialGuess guess;

  /// Fiber search for the ground-state pipeline.
  SRange fiber_initial{1e-3, 1e3, 200};
  SRange fiber_local{0.5, 2.0, 41};

  /// Record traces every this many iterations (the last iterate is always recorded).
  int trace_stride = 50;

  void validate() const;
};

struct SolveDiagnostics {
  std::vector<int> trace_iteration;
  std::vector<double> energy_trace;
  std::vector<double> theta_trace;     ///< mu |grad u|_theta^theta
  std::vector<double> residual_trace;  ///< stopping residual (tangent residual for ground states)
  /// Ground states: residual with the mass and Pohozaev normals both removed,
  /// the stationarity measure of u -> max_s I_mu(u_s). Zero otherwise.
  double tangent_residual = 0.0;
  double rho0 = 0.0;                   ///< region cap used (inf when none)
  double xi_final = 0.0;
  double max_xi = 0.0;
  double boundary_mass_fraction = 0.0; ///< share of the mass in r > 0.8 r_max
  double fiber_s = 1.0;                ///< fiber maximiser through the final profile
  int fiber_critical_points = 0;
  bool exploratory = false;            ///< outside the regime the theory covers
  std::vector<std::string> notes;
};

struct SolveReport {
  std::string pipeline;  ///< "local_minimize" or "ground_state_level"
  ProblemParams params;
  RadialField profile;
  TermIntegrals terms;
  EnergyBreakdown breakdown;
  double level = 0.0;  ///< I_mu of the profile (the computed m or m-hat)
  double mass = 0.0;
  double lambda_weak = 0.0;
  double lambda_identity = 0.0;
  double pohozaev_residual = 0.0;     ///< normalised |Q|
  double variational_residual = 0.0;  ///< stopping quantity
  double weak_residual = 0.0;         ///< strong-form residual (diagnostic)
  Status status = Status::MaxIter;
  int iterations = 0;
  SolveDiagnostics diagnostics;
};

/// Discrete variational residual |g/w + lambda u|_{L2} / (sqrt(M)(1+|lambda|)),
/// with g the energy gradient and lambda the weak multiplier.
double variational_residual(const RadialField& u, const ProblemParams& p);

/// Mass-projected starting field.
RadialField initial_field(const ProblemParams& p, const GridPtr& grid, const InitialGuess& g);

/// Preconditioned projected descent on I_mu over S(c) inside xi_mu < rho0.
SolveReport local_minimize(const ProblemParams& p, const GridPtr& grid, const SolveConfig& cfg,
                           const RadialField* warm_start = nullptr);

/// Minimises u -> max_s I_mu(u_s) over S(c); each accepted iterate sits on
/// the fiber maximum.
SolveReport ground_state_level(const ProblemParams& p, const GridPtr& grid, const SolveConfig& cfg,
                               const RadialField* warm_start = nullptr);

/// Pipeline selection by q: local minimum below 2 + 4/N, ground state from
/// 4 + 4/N; the band in between has no solver and throws.
enum class Pipeline { LocalMin, GroundState };
Pipeline pipeline_for(const ProblemParams& p);

/// Solves along cfg.mu_schedule, warm-starting each stage from the previous
/// profile. Stops after the first stage that does not converge.
std::vector<SolveReport> mu_continuation(const ProblemParams& p, const GridPtr& grid, const SolveConfig& cfg);

/// Right side of the combined Nehari/Pohozaev identity
///   tau (4N - (N-2)q)/((N+2)q) |u|_q^q - (N-2)/(N+2) |grad u|_2^2.
double nonexistence_rhs(const RadialField& u, const ProblemParams& p);

struct NonexistenceEntry {
  std::string label;
  double rhs = 0.0;
  bool nonpositive = false;
};

struct NonexistenceCertificate {
  ProblemParams params;
  std::vector<NonexistenceEntry> fields;
  std::vector<Status> solver_statuses;
  std::vector<double> solver_lambdas;
  bool identity_nonpositive = false;  ///< every field gave rhs <= 0
  bool solvers_consistent = false;    ///< no solver run ended Converged with lambda > 0
  bool holds() const noexcept { return identity_nonpositive && solvers_consistent; }
};

/// Requires tau <= 0 and 2 < q < 2*2^*.
NonexistenceCertificate nonexistence_check(const ProblemParams& p, const std::vector<RadialField>& fields,
                                           const std::vector<SolveReport>& attempts,
                                           const std::vector<std::string>& labels = {});

enum class PathFamily { WEpsT, DilatedTruncated };
std::string to_string(PathFamily f);

struct PathOptions {
  double eps = 1e-4;
  double alpha = -1.0;                       ///< truncated family (< 0: admissible midpoint)
  BetaMode beta_mode = BetaMode::Asymptotic; ///< truncated family
  int samples = 400;                         ///< path parameter samples before refinement
};

struct PathBound {
  PathFamily family = PathFamily::DilatedTruncated;
  double level_bound = 0.0;    ///< sup of I_mu along the path
  double argmax = 0.0;         ///< maximising path parameter (t or dilation s)
  double threshold = 0.0;      ///< S^{N/2}/(2N), shifted by the base level for W_eps_t
  double base_level = 0.0;     ///< I_mu(base) (0 for the dilated family)
  double endpoint_value = 0.0; ///< I_mu at the far end of the path
  bool endpoint_ok = false;    ///< far end below 2 m (W_eps_t) or below 0 (dilated)
  bool below_threshold = false;
  double beta = 0.0;           ///< truncated family
  double alpha = 0.0;
  std::vector<double> parameter, values;
};

/// Sup of I_mu along one of the two test paths. `base` must be a converged
/// local minimiser for WEpsT and is ignored for DilatedTruncated.
PathBound path_energy_bound(const ProblemParams& p, const RadialField* base, PathFamily family,
                            const PathOptions& opt = {});

/// max_t (t^4/4 - t^{2*2^*}/(2*2^*)) by 1-D search; equals 1/(2N).
double scalar_path_max(int dim);

}  // namespace qnls
