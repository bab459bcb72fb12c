// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace qnls {

/// One instance of the constrained problem
///   (mu/theta)|grad u|_theta^theta + 1/2|grad u|_2^2 + int u^2|grad u|^2
///     - (tau/q)|u|_q^q - 1/(2*2^*) |u|_{2*2^*}^{2*2^*}  on  |u|_2^2 = c.
struct ProblemParams {
  int dim = 3;
  double q = 2.5;
  double tau = 1.0;
  double mass = 1.0;
  double mu = 1e-3;
  double theta = 2.7;

  /// Checks 2 < q < 2*2^*, the theta window, mu in [0,1], c > 0, N >= 3.
  /// Throws std::invalid_argument naming the violated bound.
  void validate() const;

  double sobolev_exponent() const noexcept { return 2.0 * dim / (dim - 2.0); }
  /// 2*2^* = 4N/(N-2): growth of the quasilinear critical term.
  double critical_exponent() const noexcept { return 4.0 * dim / (dim - 2.0); }
  double gamma_q() const noexcept;
  double gamma_theta() const noexcept;
};

/// Open interval of admissible theta: (4N/(N+2), min{(4N+4)/(N+2), N}).
double theta_lower(int dim) noexcept;
double theta_upper(int dim) noexcept;
/// Midpoint of the admissible theta window.
double default_theta(int dim) noexcept;

/// N(q-2)/(2q).
double gamma_exponent(int dim, double q) noexcept;

/// 2 + 4/N: classic L^2-critical exponent.
inline double mass_critical_classic(int dim) noexcept { return 2.0 + 4.0 / dim; }
/// 4 + 4/N: L^2-critical exponent of the quasilinear term.
inline double mass_critical_quasi(int dim) noexcept { return 4.0 + 4.0 / dim; }

}  // namespace qnls
