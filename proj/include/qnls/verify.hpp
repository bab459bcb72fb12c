// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qnls/solvers.hpp"

namespace qnls {

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct Measurement {
  std::string name;
  double value = 0.0;
};

/// Outcome of one check. `inputs_digest` is the SHA-256 of the canonical JSON
/// of whatever the check consumed, so a record can be replayed exactly.
struct VerificationRecord {
  std::string check;
  std::string inputs_digest;
  std::vector<Measurement> measured;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::string anchor;  ///< the mathematical property being checked
  std::string note;

  /// Value of a named measurement; throws std::out_of_range if absent.
  double value(const std::string& name) const;
};

/// Digest of a report's parameters, profile and scalar outputs.
std::string report_digest(const SolveReport& r);

/// Normalised |Q_mu(u)| below tol. Recomputed from the profile, so a
/// perturbed profile is judged on its own merits.
VerificationRecord check_pohozaev(const SolveReport& r, double tol = 1e-3);

/// Weak and identity multipliers agree to tol (relative); for tau > 0 the
/// multiplier must be positive, for tau <= 0 the identity value must be <= 0.
VerificationRecord check_multiplier(const SolveReport& r, double tol = 1e-2);

/// Compares multiplier disagreement on a fine and a coarse grid. When the
/// coarse disagreement is at least twice the fine one the agreement is
/// resolution-limited and the verdict is Inconclusive.
VerificationRecord check_multiplier_resolution(const SolveReport& fine, const SolveReport& coarse,
                                               double tol = 1e-2);

/// Sup norm, the ratio sup / (|u|_{2^*}^{1/2} + |u|_{2*2^*}) (reference
/// constant 1), and power-law fits of the tail. Passes iff the sup is finite
/// and the tail is non-increasing.
VerificationRecord check_linf_decay(const RadialField& u);
VerificationRecord check_linf_decay(const SolveReport& r);

/// Pairs (c, level). Needs at least 3 samples; passes iff the level does not
/// increase by more than tol between increasing c values (equal c values must
/// agree to tol).
VerificationRecord check_monotonicity(std::vector<std::pair<double, double>> levels, double tol);

/// Pairs (delta, |m(c + delta) - m(c)|). Needs at least 3 samples; passes iff
/// the gap shrinks (up to tol) as delta decreases.
VerificationRecord check_continuity(std::vector<std::pair<double, double>> gaps, double tol);

/// level < threshold.
VerificationRecord check_threshold(const std::string& name, double level, double threshold);

/// Mass equals c to tol (relative to max(1, c)).
VerificationRecord check_mass(const SolveReport& r, double tol = 1e-10);

/// Local-minimum region: I_mu < 0 and xi_mu < rho0.
VerificationRecord check_local_region(const SolveReport& r);

/// Every applicable check for one report.
std::vector<VerificationRecord> verify_battery(const SolveReport& r);

}  // namespace qnls
