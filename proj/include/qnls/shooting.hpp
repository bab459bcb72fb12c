// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <vector>

#include "qnls/grid.hpp"

namespace qnls {

/// Raised when the height scan cannot bracket the ground state.
class ShootingError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Which radial ground-state problem is being shot.
enum class GroundStateKind {
  /// -Delta u + 1 = u^{p/2-1}: compactly supported extremal of the quasilinear inequality.
  QuasiCompact,
  /// -Delta W + W = W^{q-1}: exponentially decaying extremal of the classic inequality.
  ClassicDecaying,
};

/// Trajectory of the bracketed ground state and the integrals along it.
struct ShootingResult {
  GroundStateKind kind = GroundStateKind::QuasiCompact;
  int dim = 3;
  double exponent = 0.0;  ///< p (quasi) or q (classic)
  double height = 0.0;    ///< u(0) of the bracketed solution
  double height_lo = 0.0; ///< last height whose trajectory turned upward
  double height_hi = 0.0; ///< last height whose trajectory crossed zero
  double edge = 0.0;      ///< support radius (quasi) or cut radius (classic)
  bool tail_resolved = true;
  std::vector<double> r, u, du;
  /// omega_N int u r^{N-1}, int u^2, int |u'|^2, int u^exponent over [0, edge]
  /// plus the analytic exponential tail beyond the edge for the classic case.
  double l1 = 0.0;
  double l2sq = 0.0;
  double grad2 = 0.0;
  double lp = 0.0;
  int bisection_steps = 0;

  /// Cubic-spline resample onto a grid; zero beyond the edge for the compact
  /// profile, exponential tail for the decaying one.
  RadialField sample(const GridPtr& grid) const;
  /// Max-norm ODE residual at the stored trajectory points (second derivative
  /// recovered from the stored first derivative by central differences),
  /// restricted to samples where u stays above 1e-4 of the height.
  double ode_residual() const;
};

struct ShootingOptions {
  double rel_tol = 1e-12;       ///< ODE relative tolerance
  double abs_tol = 1e-14;       ///< ODE absolute tolerance
  double height_tol = 1e-13;    ///< relative width of the final height bracket
  double r_cap = 400.0;         ///< give up integrating beyond this radius
  double height_cap = 1e8;      ///< upper end of the height scan
};

ShootingResult shoot_ground_state(GroundStateKind kind, double exponent, int dim,
                                  const ShootingOptions& opt = {});

}  // namespace qnls
