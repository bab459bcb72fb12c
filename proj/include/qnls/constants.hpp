// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qnls/grid.hpp"
#include "qnls/params.hpp"
#include "qnls/shooting.hpp"

namespace qnls {

/// Sobolev constant from the Rayleigh quotient |grad v|_2^2 / |v|_{2^*}^2 of
/// v = (1 + r^2)^{-(N-2)/2}. After r = tan(t) both integrands are smooth on
/// [0, pi/2]; the trapezoid sums are Romberg-extrapolated in the spacing.
struct SobolevEstimate {
  double value = 0.0;
  /// Raw trapezoid quotients for spacings pi/2 / 2^k, k = 2, 3, ...
  std::vector<double> trapezoid;
  /// Last column of the Romberg table (one entry per refinement).
  std::vector<double> extrapolated;
};

SobolevEstimate sobolev_estimate(int dim, int levels = 8);
double sobolev_constant(int dim);
/// Closed form pi N (N-2) (Gamma(N/2)/Gamma(N))^{2/N}; kept only as a test oracle.
double sobolev_constant_closed_form(int dim);

/// Extremal Q_p of the quasilinear inequality (-Delta Q + 1 = Q^{p/2-1}).
struct GNExtremal {
  double p = 0.0;
  int dim = 3;
  double l1_norm = 0.0;     ///< |Q_p|_1
  double shoot_param = 0.0; ///< Q_p(0)
  double support = 0.0;     ///< radius where the profile reaches zero
  double ode_residual = 0.0;
  ShootingResult trajectory;
  /// Profile sampled on a grid (zero beyond the support).
  RadialField profile(const GridPtr& grid) const { return trajectory.sample(grid); }
};

GNExtremal gn_extremal(double p, int dim, const ShootingOptions& opt = {});

/// Prefactor C(p,N) of the quasilinear inequality for the L^1 / gradient form.
/// The exponent of [4N - (N-2)p] is (4N+4-Np)/(2(N+2)), the value that makes
/// the inequality scale-invariant.
double gn_prefactor(double p, int dim);

/// C_2(p,N) = 4^{N(p-2)/(2(N+2))} C(p,N) / |Q_p|_1^{(p-2)/(N+2)} so that
///   |u|_p^p <= C_2 |u|_2^{2 a} (int u^2|grad u|^2)^{b},
/// a = (4N - p(N-2))/(2(N+2)), b = N(p-2)/(2(N+2)).
double gn_constant_quasi(double p, int dim);

/// |u|_p^p / (C_2 |u|_2^{2a} (int u^2|grad u|^2)^b); at most 1 for every u,
/// and 1 at u = sqrt(Q_p). `c2` is gn_constant_quasi(p, N), passed in so
/// corpus scans shoot only once.
double gn_ratio(const RadialField& u, double p, double c2);

/// Classic sharp constant C_1(q,N) in |u|_q <= C_1 |grad u|_2^{g} |u|_2^{1-g},
/// g = N(q-2)/(2q). q = 2 gives 1, q = 2^* gives S^{-1/2}; otherwise it comes
/// from the decaying ground state of -Delta W + W = W^{q-1}.
double gn_constant_classic(double q, int dim);

/// Ground state of -Delta W + W = W^{q-1}, 2 < q < 2^*.
ShootingResult classic_ground_state(double q, int dim, const ShootingOptions& opt = {});

/// Exponents of the landscape function f(c, rho).
struct LandscapeExponents {
  double alpha0 = 0.0;  ///< N(q-2)/(2(N+2)) - 1
  double alpha1 = 0.0;  ///< (4N - q(N-2))/(2(N+2))
  double alpha2 = 0.0;  ///< 2/(N-2)
};
LandscapeExponents landscape_exponents(int dim, double q);

/// f(c, rho) = 1/2 - A c^{alpha1} rho^{alpha0} - B rho^{alpha2} with
/// A = tau C_2(q,N)/q and B = (4/S)^{2^*/2}/(2*2^*). Build once, evaluate often.
struct Landscape {
  LandscapeExponents e;
  double A = 0.0;
  double B = 0.0;

  double operator()(double c, double rho) const;
  /// Closed-form maximiser rho_c of rho -> f(c, rho) (requires alpha0 < 0 < A).
  double rho_c(double c) const;
};

/// Builds the landscape for p.dim, p.q, p.tau (p.mass, mu, theta are unused).
Landscape make_landscape(const ProblemParams& p);
/// Convenience: f(c, rho) with the constants recomputed for p.
double f_landscape(double c, double rho, const ProblemParams& p);

struct LandscapeMax {
  double rho = 0.0;
  double value = 0.0;
};
/// Numerical maximum of rho -> f(c, rho): log-spaced scan plus Brent.
LandscapeMax f_max(const Landscape& f, double c, double rho_lo = 1e-12, double rho_hi = 1e12);

/// Piecewise threshold exponent used by the mountain-pass estimates.
double q_N(int dim);
/// min{(N^2+4)/(2N(N+2)), 2/N}.
double D1(int dim);

/// Every threshold evaluated for one parameter set. Entries whose formula
/// is outside its validity range are empty and carry a note.
struct ThresholdSet {
  int dim = 3;
  double q = 0.0;
  double tau = 0.0;
  double mass = 0.0;
  double sobolev = 0.0;
  double level_threshold = 0.0;  ///< S^{N/2}/(2N)
  double qN = 0.0;
  double D1 = 0.0;
  LandscapeExponents alphas;
  bool alphas_in_range = false;  ///< alpha0 in (-1,0), alpha1 in (2/N,1), alpha2 in (0,2]
  std::optional<double> C1_q, C2_q, K, c0, rho0, rho_c, cbar1, cbar2, cbar3, rho_tilde0, rho_star;
  std::vector<std::string> notes;
};

ThresholdSet thresholds(const ProblemParams& p);

}  // namespace qnls
