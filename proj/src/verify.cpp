// SPDX-License-Identifier: Apache-2.0
#include "qnls/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qnls/constants.hpp"
#include "qnls/report_io.hpp"

namespace qnls {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

double VerificationRecord::value(const std::string& name) const {
  for (const auto& m : measured)
    if (m.name == name) return m.value;
  throw std::out_of_range("no measurement named " + name + " in " + check);
}

std::string report_digest(const SolveReport& r) {
  return io::sha256_hex(io::to_json(r, true).dump());
}

namespace {

std::string digest_of(const io::Json& j) { return io::sha256_hex(j.dump()); }

std::string digest_of_field(const RadialField& u) {
  io::Json j;
  j["grid"] = io::to_json(u.grid->spec());
  j["values"] = u.values;
  return digest_of(j);
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
}

}  // namespace

VerificationRecord check_pohozaev(const SolveReport& r, double tol) {
  VerificationRecord v;
  v.check = "pohozaev";
  v.inputs_digest = report_digest(r);
  v.tolerance = tol;
  v.anchor = "constrained critical points satisfy Q_mu(u) = 0";
  const TermIntegrals t = term_integrals(r.profile, r.params.q, r.params.theta);
  const double qn = normalized_pohozaev(t, r.params);
  v.measured = {{"normalized_pohozaev", qn}, {"pohozaev", breakdown_from_terms(t, r.params).total_Q}};
  v.verdict = qn < tol ? Verdict::Pass : Verdict::Fail;
  if (t.mass == 0.0) v.note = "zero field: Q vanishes identically";
  return v;
}

VerificationRecord check_multiplier(const SolveReport& r, double tol) {
  VerificationRecord v;
  v.check = "multiplier";
  v.inputs_digest = report_digest(r);
  v.tolerance = tol;
  v.anchor = "lambda = -<I'(u),u>/c agrees with the Nehari-Pohozaev combination";
  const TermIntegrals t = term_integrals(r.profile, r.params.q, r.params.theta);
  if (!(t.mass > 0.0)) {
    v.verdict = Verdict::Inconclusive;
    v.note = "zero field: multiplier undefined";
    return v;
  }
  const double lw = multiplier_weak(t, r.params);
  const double li = multiplier_identity(t, r.params);
  const double rel = std::abs(lw - li) / std::max(std::abs(lw), 1e-8);
  v.measured = {{"lambda_weak", lw}, {"lambda_identity", li}, {"relative_gap", rel}};
  if (r.params.tau > 0.0) {
    const bool ok = rel < tol && lw > 0.0 && li > 0.0;
    v.verdict = ok ? Verdict::Pass : Verdict::Fail;
    if (rel < tol && !(li > 0.0)) v.note = "estimates agree but the multiplier is not positive";
  } else {
    v.verdict = li <= 0.0 ? Verdict::Pass : Verdict::Fail;
    v.note = li <= 0.0 ? "tau <= 0: identity multiplier non-positive, so no solution with lambda > 0"
                       : "tau <= 0 but the identity multiplier is positive";
  }
  return v;
}

VerificationRecord check_multiplier_resolution(const SolveReport& fine, const SolveReport& coarse, double tol) {
  VerificationRecord v;
  v.check = "multiplier_resolution";
  io::Json j;
  j["fine"] = report_digest(fine);
  j["coarse"] = report_digest(coarse);
  v.inputs_digest = digest_of(j);
  v.tolerance = tol;
  v.anchor = "multiplier agreement improves under grid refinement";
  auto gap = [](const SolveReport& r) {
    const TermIntegrals t = term_integrals(r.profile, r.params.q, r.params.theta);
    const double lw = multiplier_weak(t, r.params);
    return std::abs(lw - multiplier_identity(t, r.params)) / std::max(std::abs(lw), 1e-8);
  };
  const double gf = gap(fine);
  const double gc = gap(coarse);
  v.measured = {{"gap_fine", gf}, {"gap_coarse", gc}};
  if (!(gf < tol)) {
    v.verdict = Verdict::Fail;
  } else if (gc >= 2.0 * gf) {
    v.verdict = Verdict::Inconclusive;
    v.note = "resolution-limited: agreement degrades under coarsening";
  } else {
    v.verdict = Verdict::Pass;
  }
  return v;
}

VerificationRecord check_linf_decay(const RadialField& u) {
  VerificationRecord v;
  v.check = "linf_decay";
  v.inputs_digest = digest_of_field(u);
  v.anchor = "|u|_inf <= C(|u|_{2^*}^{1/2} + |u|_{2*2^*}) with a decaying tail";
  const auto& r = u.grid->r();
  const int N = u.grid->dim();
  std::size_t imax = 0;
  double sup = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (std::abs(u.values[i]) > sup) {
      sup = std::abs(u.values[i]);
      imax = i;
    }
  }
  if (sup == 0.0) {
    v.measured = {{"sup", 0.0}};
    v.verdict = Verdict::Pass;
    v.note = "zero field";
    return v;
  }
  const double ss = 2.0 * N / (N - 2.0);
  const double bound = std::sqrt(lp_norm(u, ss)) + lp_norm(u, 2.0 * ss);
  v.measured = {{"sup", sup}, {"bound_c1", bound}, {"ratio", sup / bound}};

  // Tail: from where |u| first falls below half its peak to 0.8 r_max, while
  // the samples stay well above rounding.
  std::size_t i0 = imax;
  while (i0 < u.size() && std::abs(u.values[i0]) > 0.5 * sup) ++i0;
  bool decreasing = true;
  std::vector<double> lr, lu;
  for (std::size_t i = i0; i + 1 < u.size() && r[i] <= 0.8 * u.grid->r_max(); ++i) {
    const double a = std::abs(u.values[i]);
    if (std::abs(u.values[i + 1]) > a + 1e-12 * sup) decreasing = false;
    if (a > 1e-10 * sup && r[i] > 0.0) {
      lr.push_back(std::log(r[i]));
      lu.push_back(std::log(a));
    }
  }
  v.tolerance = 0.0;
  if (lr.size() < 8) {
    v.verdict = std::isfinite(sup) && decreasing ? Verdict::Pass : Verdict::Fail;
    v.note = "tail too short to fit";
    return v;
  }
  const std::size_t half = lr.size() / 2;
  const std::vector<double> xi(lr.begin(), lr.begin() + half), yi(lu.begin(), lu.begin() + half);
  const std::vector<double> xo(lr.begin() + half, lr.end()), yo(lu.begin() + half, lu.end());
  const double inner = least_squares_slope(xi, yi);
  const double outer = least_squares_slope(xo, yo);
  v.measured.push_back({"tail_exponent", -outer});
  v.measured.push_back({"inner_exponent", -inner});
  const bool superpoly = outer < 1.5 * inner && outer < 0.0;
  v.measured.push_back({"super_polynomial", superpoly ? 1.0 : 0.0});
  v.note = superpoly ? "tail decays faster than any power" : "tail decays like a power of r";
  v.verdict = std::isfinite(sup) && decreasing ? Verdict::Pass : Verdict::Fail;
  if (!decreasing) v.note += "; tail not monotone";
  return v;
}

VerificationRecord check_linf_decay(const SolveReport& r) {
  VerificationRecord v = check_linf_decay(r.profile);
  v.inputs_digest = report_digest(r);
  return v;
}

VerificationRecord check_monotonicity(std::vector<std::pair<double, double>> levels, double tol) {
  if (levels.size() < 3) throw std::invalid_argument("check_monotonicity needs at least 3 samples");
  VerificationRecord v;
  v.check = "monotonicity";
  v.inputs_digest = digest_of(io::Json(levels));
  v.tolerance = tol;
  v.anchor = "c -> level is non-increasing";
  std::stable_sort(levels.begin(), levels.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t j = i + 1; j < levels.size(); ++j) {
      const double d = levels[j].second - levels[i].second;
      worst = std::max(worst, levels[j].first == levels[i].first ? std::abs(d) : d);
    }
  }
  v.measured = {{"max_increase", worst}};
  v.verdict = worst <= tol ? Verdict::Pass : Verdict::Fail;
  return v;
}

VerificationRecord check_continuity(std::vector<std::pair<double, double>> gaps, double tol) {
  if (gaps.size() < 3) throw std::invalid_argument("check_continuity needs at least 3 samples");
  VerificationRecord v;
  v.check = "continuity";
  v.inputs_digest = digest_of(io::Json(gaps));
  v.tolerance = tol;
  v.anchor = "|m(c + delta) - m(c)| -> 0 as delta -> 0";
  std::sort(gaps.begin(), gaps.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  bool shrinking = true;
  for (std::size_t i = 1; i < gaps.size(); ++i)
    if (std::abs(gaps[i].second) > std::abs(gaps[i - 1].second) + tol) shrinking = false;
  v.measured = {{"largest_gap", std::abs(gaps.front().second)}, {"smallest_gap", std::abs(gaps.back().second)}};
  v.verdict = shrinking && std::abs(gaps.back().second) < std::abs(gaps.front().second) + tol ? Verdict::Pass
                                                                                             : Verdict::Fail;
  return v;
}

VerificationRecord check_threshold(const std::string& name, double level, double threshold) {
  VerificationRecord v;
  v.check = "threshold:" + name;
  io::Json j;
  j["level"] = io::number(level);
  j["threshold"] = io::number(threshold);
  v.inputs_digest = digest_of(j);
  v.anchor = "level below S^{N/2}/(2N) restores compactness";
  v.measured = {{"level", level}, {"threshold", threshold}, {"margin", threshold - level}};
  v.verdict = level < threshold ? Verdict::Pass : Verdict::Fail;
  return v;
}

VerificationRecord check_mass(const SolveReport& r, double tol) {
  VerificationRecord v;
  v.check = "mass";
  v.inputs_digest = report_digest(r);
  v.tolerance = tol;
  v.anchor = "|u|_2^2 = c";
  const double m = mass(r.profile);
  const double err = std::abs(m - r.params.mass) / std::max(1.0, r.params.mass);
  v.measured = {{"mass", m}, {"relative_error", err}};
  v.verdict = err <= tol ? Verdict::Pass : Verdict::Fail;
  return v;
}

VerificationRecord check_local_region(const SolveReport& r) {
  VerificationRecord v;
  v.check = "local_region";
  v.inputs_digest = report_digest(r);
  v.anchor = "local minimiser has I_mu < 0 and lies strictly inside xi_mu < rho0";
  const TermIntegrals t = term_integrals(r.profile, r.params.q, r.params.theta);
  const double level = breakdown_from_terms(t, r.params).total_I;
  const double xi = xi_mu(t, r.params);
  v.measured = {{"level", level}, {"xi", xi}, {"rho0", r.diagnostics.rho0}};
  v.verdict = level < 0.0 && xi < r.diagnostics.rho0 ? Verdict::Pass : Verdict::Fail;
  return v;
}

std::vector<VerificationRecord> verify_battery(const SolveReport& r) {
  std::vector<VerificationRecord> out;
  out.push_back(check_mass(r));
  out.push_back(check_pohozaev(r));
  out.push_back(check_multiplier(r));
  out.push_back(check_linf_decay(r));
  if (r.pipeline == "local_minimize") out.push_back(check_local_region(r));
  if (r.params.tau > 0.0 && r.pipeline == "ground_state_level") {
    const double thr = std::pow(sobolev_constant(r.params.dim), 0.5 * r.params.dim) / (2.0 * r.params.dim);
    out.push_back(check_threshold("ground_state", r.level, thr));
  }
  return out;
}

}  // namespace qnls
