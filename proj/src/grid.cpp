// SPDX-License-Identifier: Apache-2.0
#include "qnls/grid.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>

namespace qnls {

namespace {

constexpr int kMaxDim = 12;

// Weights of the product rule on one cell: the integrand is replaced by its
// quadratic interpolant through three neighbouring nodes, and the interpolant
// times r^{N-1} is integrated exactly by an 8-point Gauss rule (degree 15).
std::array<double, 3> cell_weights(const std::array<double, 3>& x, double a, double b, int dim) {
  using Rule = boost::math::quadrature::gauss<double, 8>;
  const auto& abscissa = Rule::abscissa();
  const auto& weight = Rule::weights();
  std::array<double, 3> out{0.0, 0.0, 0.0};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto accumulate = [&](double t, double wt) {
    const double r = mid + half * t;
    const double jac = wt * half * std::pow(r, dim - 1);
    for (int j = 0; j < 3; ++j) {
      double basis = 1.0;
      for (int k = 0; k < 3; ++k) {
        if (k != j) basis *= (r - x[k]) / (x[j] - x[k]);
      }
      out[j] += jac * basis;
    }
  };
  // Rule stores the non-negative half of the symmetric abscissae.
  for (std::size_t g = 0; g < abscissa.size(); ++g) {
    if (abscissa[g] == 0.0) {
      accumulate(0.0, weight[g]);
    } else {
      accumulate(abscissa[g], weight[g]);
      accumulate(-abscissa[g], weight[g]);
    }
  }
  return out;
}

}  // namespace

void GridSpec::validate() const {
  if (dim < 3) throw std::invalid_argument("grid.dim must be >= 3, got " + std::to_string(dim));
  if (dim > kMaxDim)
    throw std::invalid_argument("grid.dim must be <= " + std::to_string(kMaxDim));
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw std::invalid_argument("grid.r_max must be a positive finite length");
  if (n_nodes < 3) throw std::invalid_argument("grid.n_nodes must be >= 3");
  if (!(grading >= 1.0) || !std::isfinite(grading))
    throw std::invalid_argument("grid.grading must be >= 1");
}

double sphere_area(int dim) {
  const double pi = boost::math::constants::pi<double>();
  return 2.0 * std::pow(pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double ball_volume(int dim, double radius) {
  return sphere_area(dim) * std::pow(radius, dim) / dim;
}

Grid::Grid(const GridSpec& spec) : spec_(spec) {
  spec_.validate();
  const int n = spec_.n_nodes;
  const int N = spec_.dim;
  omega_ = sphere_area(N);

  h_.resize(n - 1);
  const double g = spec_.grading;
  const double h0 = (g == 1.0) ? spec_.r_max / (n - 1)
                               : spec_.r_max * (g - 1.0) / (std::pow(g, n - 1) - 1.0);
  r_.assign(n, 0.0);
  for (int i = 0; i < n - 1; ++i) {
    r_[i + 1] = r_[i] + h0 * std::pow(g, i);
  }
  r_[n - 1] = spec_.r_max;
  for (int i = 0; i < n - 1; ++i) {
    h_[i] = r_[i + 1] - r_[i];
    if (!(h_[i] > 0.0)) throw std::invalid_argument("grid nodes are not strictly increasing");
  }

  cell_.resize(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    cell_[i] = omega_ * (std::pow(r_[i + 1], N) - std::pow(r_[i], N)) / N;
  }

  w_.assign(n, 0.0);
  for (int i = 0; i < n - 1; ++i) {
    // Use the stencil (i, i+1, i+2) except on the last cell; n >= 3 is validated.
    const int first = (i + 2 <= n - 1) ? i : i - 1;
    const std::array<double, 3> x{r_[first], r_[first + 1], r_[first + 2]};
    const auto cw = cell_weights(x, r_[i], r_[i + 1], N);
    for (int j = 0; j < 3; ++j) w_[first + j] += cw[j];
  }
  for (auto& w : w_) w *= omega_;
}

GridPtr make_grid(const GridSpec& spec) { return std::make_shared<const Grid>(spec); }

RadialField::RadialField(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
  validate();
}

RadialField RadialField::zeros(GridPtr g) {
  const std::size_t n = g->size();
  return RadialField(std::move(g), std::vector<double>(n, 0.0));
}

RadialField RadialField::from_function(GridPtr g, const std::function<double(double)>& f) {
  std::vector<double> v(g->size());
  const auto& r = g->r();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(r[i]);
  return RadialField(std::move(g), std::move(v));
}

void RadialField::validate() const {
  if (!grid) throw std::invalid_argument("radial field has no grid");
  if (values.size() != grid->size())
    throw std::invalid_argument("radial field size does not match its grid");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("radial field has a non-finite sample");
  }
}

double integrate(const RadialField& f) {
  f.validate();
  const auto& w = f.grid->weights();
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f.values[i];
  return s;
}

RadialField radial_derivative(const RadialField& u) {
  u.validate();
  const auto& r = u.grid->r();
  const std::size_t n = r.size();
  std::vector<double> d(n, 0.0);
  const auto& v = u.values;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = r[i] - r[i - 1];
    const double hp = r[i + 1] - r[i];
    d[i] = -hp / (hm * (hm + hp)) * v[i - 1] + (hp - hm) / (hm * hp) * v[i] +
           hm / (hp * (hm + hp)) * v[i + 1];
  }
  if (n >= 3) {
    // Backward three-point stencil at r_max.
    const std::size_t k = n - 1;
    const double h1 = r[k] - r[k - 1];
    const double h2 = r[k - 1] - r[k - 2];
    const double s = h1 + h2;
    d[k] = (h1 + s) / (h1 * s) * v[k] - s / (h1 * h2) * v[k - 1] + h1 / (h2 * s) * v[k - 2];
  }
  d[0] = 0.0;
  return RadialField(u.grid, std::move(d));
}

double lp_norm(const RadialField& u, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
  u.validate();
  const auto& w = u.grid->weights();
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * std::pow(std::abs(u.values[i]), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace qnls
