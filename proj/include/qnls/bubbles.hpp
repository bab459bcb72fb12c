// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnls/functionals.hpp"
#include "qnls/grid.hpp"

namespace qnls {

/// Raised when a grid cannot represent a requested bubble.
class ResolutionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Cut-off Aubin-Talenti bubble U = xi * u_eps with xi = 1 on r < 1 and
/// xi = 0 on r > 2.
struct BubbleSpec {
  double eps = 1e-3;
  double cutoff_inner = 1.0;
  double cutoff_outer = 2.0;
  void validate() const;
};

/// Three-piece truncated bubble: core up to eps^{-alpha}, linear ramp to
/// zero at eps^{-beta}.
struct TruncatedBubbleSpec {
  double eps = 1e-3;
  double alpha = 0.0625;
  double beta = 0.2;
  void validate() const;
};

/// Admissible window for alpha. The plain window is empty for some (N, q);
/// the large-coupling window (tau of order 1/eps) uses a lower left end.
struct AlphaInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool large_coupling = false;
  bool empty() const noexcept { return !(hi > lo); }
  double midpoint() const noexcept { return 0.5 * (lo + hi); }
};
AlphaInterval alpha_interval(int dim, double q, bool large_coupling = false);
/// The plain window when non-empty, otherwise the large-coupling one.
AlphaInterval admissible_alpha(int dim, double q);

/// (N(N-2))^{(N-2)/8}.
double bubble_prefactor(int dim);

/// C^2 monotone cut-off: 1 on [0,1], 1 - S(r-1) on [1,2] with
/// S(x) = 10x^3 - 15x^4 + 6x^5, 0 beyond. `cutoff_derivative` is its r-derivative.
double cutoff(double r, double inner = 1.0, double outer = 2.0);
double cutoff_derivative(double r, double inner = 1.0, double outer = 2.0);

/// Analytic profiles and their radial derivatives.
double aubin_talenti(double r, double eps, int dim);
double aubin_talenti_derivative(double r, double eps, int dim);
double cutoff_bubble(double r, const BubbleSpec& s, int dim);
double cutoff_bubble_derivative(double r, const BubbleSpec& s, int dim);
double truncated_bubble_value(double r, const TruncatedBubbleSpec& s, int dim);
double truncated_bubble_derivative(double r, const TruncatedBubbleSpec& s, int dim);

/// Minimum number of grid nodes required inside r < sqrt(eps).
inline constexpr int kBubbleCoreNodes = 10;

/// Samples U on the grid. Throws ResolutionError when fewer than
/// kBubbleCoreNodes nodes fall inside r < sqrt(eps) or the grid ends before 2.
RadialField bubble(const BubbleSpec& spec, const GridPtr& grid);
/// Samples the truncated bubble. Throws ResolutionError when the grid does not
/// reach eps^{-beta} or under-resolves sqrt(eps).
RadialField truncated_bubble(const TruncatedBubbleSpec& spec, const GridPtr& grid);

/// Integrals of an analytic radial profile by adaptive Gauss-Kronrod between
/// the supplied breakpoints (sorted, first 0, last the support end).
struct ProfileIntegrals {
  TermIntegrals terms;
  double lr = 0.0;  ///< int u^r dx for the requested extra exponent
};
ProfileIntegrals profile_integrals(const std::function<double(double)>& u,
                                   const std::function<double(double)>& du,
                                   const std::vector<double>& breaks, int dim, double q,
                                   double theta, double r_extra = 2.0);

ProfileIntegrals cutoff_bubble_integrals(const BubbleSpec& s, int dim, double q, double theta,
                                         double r_extra = 2.0);
ProfileIntegrals truncated_bubble_integrals(const TruncatedBubbleSpec& s, int dim, double q,
                                            double theta);

/// How beta is chosen for a target mass.
enum class BetaMode {
  Exact,       ///< root of |U_hat|_2^2 = c at the given eps
  Asymptotic,  ///< limit relation eps^{a}/eps^{beta} -> K
};

/// Solves for beta > alpha. Throws std::runtime_error when no root exists.
double solve_beta(double eps, double alpha, double mass, int dim, BetaMode mode = BetaMode::Exact);

/// Closed-form ramp contribution to the mass (core part excluded); used as
/// an independent check of the quadrature.
double ramp_mass_closed_form(const TruncatedBubbleSpec& s, int dim);

enum class BubbleKind { Cutoff, Truncated };

/// One fitted deviation exponent.
struct EstimateRow {
  std::string quantity;
  std::string limit;             ///< what the deviation is measured from
  std::vector<double> values;    ///< raw quantity per eps
  std::vector<double> deviation; ///< |value - limit| per eps
  double expected = 0.0;         ///< predicted power of eps
  double fitted = 0.0;
  double r_squared = 0.0;
  double band = 0.15;            ///< relative tolerance on the exponent
  bool log_corrected = false;
  bool lower_bound = false;      ///< prediction is only a lower bound on the value
  bool low_fit_quality = false;  ///< R^2 < 0.9
  bool within_band = false;
};

struct EstimateOptions {
  int dim = 3;
  double q = 6.0;      ///< exponent for |U_hat|_q^q (truncated case)
  double theta = 0.0;  ///< 0 selects the default theta for dim
  double mass = 10.0;  ///< target mass for beta (truncated case); the core alone carries a few units at eps = 1e-2
  double alpha = -1.0; ///< < 0 selects the admissible midpoint
  BetaMode beta_mode = BetaMode::Exact;
};

struct EstimateTable {
  BubbleKind kind = BubbleKind::Cutoff;
  std::vector<double> eps;
  std::vector<double> beta;  ///< truncated case only
  double alpha = 0.0;
  double sobolev_level = 0.0;  ///< S^{N/2}
  std::vector<EstimateRow> rows;
  const EstimateRow& row(const std::string& name) const;
};

/// Least-squares slope of log|dev| against log eps with R^2.
std::pair<double, double> fit_power(const std::vector<double>& eps, const std::vector<double>& dev);

/// Evaluates every estimate on the schedule (at least 4 values spanning
/// 3 decades; throws otherwise).
EstimateTable estimate_suite(BubbleKind kind, const std::vector<double>& eps_schedule,
                             const EstimateOptions& opt = {});

}  // namespace qnls
