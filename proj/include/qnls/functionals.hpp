// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "qnls/grid.hpp"
#include "qnls/params.hpp"

namespace qnls {

/// Raw integrals behind every functional:
///   theta_grad = |grad u|_theta^theta, grad2 = |grad u|_2^2, quasi = int u^2|grad u|^2,
///   lq = |u|_q^q, crit = |u|_{2*2^*}^{2*2^*}, mass = |u|_2^2.
struct TermIntegrals {
  double theta_grad = 0.0;
  double grad2 = 0.0;
  double quasi = 0.0;
  double lq = 0.0;
  double crit = 0.0;
  double mass = 0.0;
};

/// Term-by-term energy and the Pohozaev value.
struct EnergyBreakdown {
  double grad_theta = 0.0;  ///< (mu/theta) |grad u|_theta^theta
  double grad2 = 0.0;       ///< 1/2 |grad u|_2^2
  double quasi = 0.0;       ///< int u^2 |grad u|^2
  double subq = 0.0;        ///< (tau/q) |u|_q^q
  double crit = 0.0;        ///< 1/(2*2^*) |u|_{2*2^*}^{2*2^*}
  double total_I = 0.0;
  double total_Q = 0.0;

  /// Column order used by the CSV writers.
  static const std::vector<std::string>& csv_columns();
  std::vector<double> csv_row() const;
};

/// Discrete integrals. Gradient terms use cell differences on exact shell
/// measures; pointwise terms use the node weights. The node at r_max is
/// treated as zero.
TermIntegrals term_integrals(const RadialField& u, double q, double theta);

/// Energy coefficients of the five terms: I = sum_k a_k * term_k with the
/// non-negative terms added and lq/crit subtracted.
std::array<double, 5> energy_coefficients(const ProblemParams& p);
/// Coefficients of Q: mu(1+g_theta), 1, N+2, tau g_q, (N+2)/4.
std::array<double, 5> pohozaev_coefficients(const ProblemParams& p);
/// Dilation exponents theta(1+g_theta), 2, N+2, N(q-2)/2, N(2^*-1).
std::array<double, 5> fiber_exponents(const ProblemParams& p);

EnergyBreakdown breakdown_from_terms(const TermIntegrals& t, const ProblemParams& p);

EnergyBreakdown energy(const RadialField& u, const ProblemParams& p);
double pohozaev(const RadialField& u, const ProblemParams& p);

/// |Q| scaled by the energy scale |grad u|_2^2 + int u^2|grad u|^2 + 1.
double normalized_pohozaev(const TermIntegrals& t, const ProblemParams& p);

/// xi_mu(u) = (mu/theta)|grad u|_theta^theta + |grad u|_2^2 + int u^2|grad u|^2.
double xi_mu(const TermIntegrals& t, const ProblemParams& p);

/// L^2 norm of the strong-form Euler-Lagrange residual
///   -mu Delta_theta u - Delta u - u Delta(u^2) + lambda u - tau|u|^{q-2}u - |u|^{2*2^*-2}u
/// with nodal finite differences.
double weak_residual(const RadialField& u, double lambda, const ProblemParams& p);

/// lambda = -<I'(u), u> / |u|_2^2 with the pairing in integrated form.
double multiplier_weak(const RadialField& u, const ProblemParams& p);
double multiplier_weak(const TermIntegrals& t, const ProblemParams& p);

/// Multiplier from combining the Nehari pairing with Q = 0:
///   lambda |u|^2 = tau(1 - 4g_q/(N+2))|u|_q^q - (N-2)/(N+2)|grad u|^2
///                 + mu(4(1+g_theta)/(N+2) - 1)|grad u|_theta^theta.
/// The last term vanishes at mu = 0.
double multiplier_identity(const RadialField& u, const ProblemParams& p);
double multiplier_identity(const TermIntegrals& t, const ProblemParams& p);

/// Gradient of the discrete functional sum_k coef_k * term_k (signs as in
/// energy_coefficients) with respect to the nodal values. The entry for the
/// Dirichlet node is zero.
std::vector<double> functional_gradient(const RadialField& u, const ProblemParams& p,
                                        const std::array<double, 5>& coef);

std::vector<double> energy_gradient(const RadialField& u, const ProblemParams& p);
std::vector<double> pohozaev_gradient(const RadialField& u, const ProblemParams& p);

}  // namespace qnls
