// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace qnls {

/// Geometric radial grid on [0, r_max]: cell widths grow by `grading` so that
/// nodes cluster near the origin where concentrating profiles live.
struct GridSpec {
  int dim = 3;
  double r_max = 50.0;
  int n_nodes = 2000;
  double grading = 1.003;

  /// Throws std::invalid_argument naming the first violated bound.
  void validate() const;
};

/// Immutable grid with the node positions and the quadrature data every
/// operator needs. Shared between fields through std::shared_ptr.
class Grid {
public:
  explicit Grid(const GridSpec& spec);

  const GridSpec& spec() const noexcept { return spec_; }
  int dim() const noexcept { return spec_.dim; }
  std::size_t size() const noexcept { return r_.size(); }
  double r_max() const noexcept { return spec_.r_max; }

  /// Surface area of the unit sphere in R^N.
  double omega() const noexcept { return omega_; }

  const std::vector<double>& r() const noexcept { return r_; }
  /// Cell widths h_i = r_{i+1} - r_i (size n-1).
  const std::vector<double>& h() const noexcept { return h_; }
  /// Node weights embedding omega_N r^{N-1} dr (piecewise-quadratic product rule).
  const std::vector<double>& weights() const noexcept { return w_; }
  /// Exact measure of the shell [r_i, r_{i+1}] (size n-1).
  const std::vector<double>& cell_measure() const noexcept { return cell_; }

private:
  GridSpec spec_;
  double omega_ = 0.0;
  std::vector<double> r_, h_, w_, cell_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(const GridSpec& spec);

/// Sampled radial profile u(r). The value at r_max is the decay boundary.
struct RadialField {
  GridPtr grid;
  std::vector<double> values;

  RadialField() = default;
  RadialField(GridPtr g, std::vector<double> v);

  static RadialField zeros(GridPtr g);
  static RadialField from_function(GridPtr g, const std::function<double(double)>& f);

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }

  /// Throws std::invalid_argument on a missing grid, size mismatch or a non-finite sample.
  void validate() const;
};

/// omega_N * int_0^{r_max} f(r) r^{N-1} dr.
double integrate(const RadialField& f);

/// Second-order nodal derivative; zero at the origin, one-sided at r_max.
RadialField radial_derivative(const RadialField& u);

/// (int |u|^p dx)^{1/p}; p >= 1.
double lp_norm(const RadialField& u, double p);

/// Volume of the unit-radius ball in R^N times r^N, used by tests and tools.
double ball_volume(int dim, double radius);

/// Surface area of the unit sphere in R^N.
double sphere_area(int dim);

}  // namespace qnls
