// SPDX-License-Identifier: Apache-2.0
#include "qnls/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qnls {

double theta_lower(int dim) noexcept { return 4.0 * dim / (dim + 2.0); }

double theta_upper(int dim) noexcept {
  return std::min((4.0 * dim + 4.0) / (dim + 2.0), static_cast<double>(dim));
}

double default_theta(int dim) noexcept { return 0.5 * (theta_lower(dim) + theta_upper(dim)); }

double gamma_exponent(int dim, double q) noexcept { return dim * (q - 2.0) / (2.0 * q); }

double ProblemParams::gamma_q() const noexcept { return gamma_exponent(dim, q); }

double ProblemParams::gamma_theta() const noexcept { return gamma_exponent(dim, theta); }

void ProblemParams::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (dim < 3) fail("problem.dim must be >= 3");
  const double qc = critical_exponent();
  if (!(q > 2.0 && q < qc)) {
    std::ostringstream os;
    os << "problem.q must satisfy 2 < q < 4N/(N-2) = " << qc << ", got " << q;
    fail(os.str());
  }
  if (!std::isfinite(tau)) fail("problem.tau must be finite");
  if (!(mass > 0.0) || !std::isfinite(mass)) fail("problem.mass must be > 0");
  if (!(mu >= 0.0 && mu <= 1.0)) fail("problem.mu must lie in [0, 1]");
  const double lo = theta_lower(dim);
  const double hi = theta_upper(dim);
  if (!(theta > lo && theta < hi)) {
    std::ostringstream os;
    os << "problem.theta must satisfy 4N/(N+2) = " << lo << " < theta < min{(4N+4)/(N+2), N} = "
       << hi << ", got " << theta;
    fail(os.str());
  }
}

}  // namespace qnls
