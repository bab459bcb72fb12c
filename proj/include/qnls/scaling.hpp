// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <vector>

#include "qnls/functionals.hpp"

namespace qnls {

/// Raised when the scanned s-range does not contain an interior maximum.
class BracketError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SRange {
  double lo = 1e-3;
  double hi = 1e3;
  int samples = 200;
};

/// Samples of s -> I_mu(u_s) together with Q_mu(u_s) (= s * psi'(s)).
struct FiberProfile {
  RadialField base;
  std::vector<double> s_samples;
  std::vector<double> values;
  std::vector<double> pohozaev;
};

struct FiberMax {
  double s = 1.0;
  double value = 0.0;
};

/// s^{N/2} u(s r), resampled on the grid of u by a cubic spline of the even
/// extension; zero beyond r_max / s.
RadialField dilate(const RadialField& u, double s);

/// psi(s) = sum_k a_k s^{e_k} T_k from the term integrals of u.
double fiber_value(const TermIntegrals& t, const ProblemParams& p, double s);
/// s psi'(s), which equals Q_mu(u_s).
double fiber_pohozaev(const TermIntegrals& t, const ProblemParams& p, double s);

FiberProfile fiber_profile(const RadialField& u, const ProblemParams& p,
                           const std::vector<double>& s_samples);

/// Global maximiser of the fiber over the range: log-spaced scan then Brent
/// refinement around the best sample (smallest s wins ties).
FiberMax fiber_max(const RadialField& u, const ProblemParams& p, const SRange& range = {});
FiberMax fiber_max(const TermIntegrals& t, const ProblemParams& p, const SRange& range = {});

/// Every sign change of s -> Q_mu(u_s) on the range, refined to 1e-8 relative.
std::vector<double> fiber_roots(const RadialField& u, const ProblemParams& p,
                                const SRange& range = {});
std::vector<double> fiber_roots(const TermIntegrals& t, const ProblemParams& p,
                                const SRange& range = {});

/// u * sqrt(c / |u|_2^2).
RadialField mass_project(const RadialField& u, double c);

/// Discrete |u|_2^2 consistent with term_integrals (Dirichlet node excluded).
double mass(const RadialField& u);

}  // namespace qnls
