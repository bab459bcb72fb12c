// SPDX-License-Identifier: Apache-2.0
#include "qnls/report_io.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace qnls::io {

std::string version() { return QNLS_VERSION; }

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double number_from(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) throw std::invalid_argument("expected a number");
  return j.get<double>();
}

namespace {

// Strict reader: every key must be consumed.
class Reader {
public:
  Reader(const Json& j, std::string ctx) : j_(j), ctx_(std::move(ctx)) {
    if (!j_.is_object()) throw std::invalid_argument(ctx_ + " must be an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    if (!j_.contains(key)) return;
    used_.insert(key);
    const Json& v = j_.at(key);
    try {
      if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) throw std::invalid_argument("not a number");
        out = v.get<T>();
      } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
        if (!v.is_number_integer()) throw std::invalid_argument("not an integer");
        out = v.get<T>();
      } else {
        out = v.get<T>();
      }
    } catch (const std::exception&) {
      throw std::invalid_argument(ctx_ + "." + key + " has the wrong type");
    }
  }

  const Json* sub(const char* key) {
    if (!j_.contains(key)) return nullptr;
    used_.insert(key);
    return &j_.at(key);
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!used_.count(k)) throw std::invalid_argument("unknown key " + ctx_ + "." + k);
  }

private:
  const Json& j_;
  std::string ctx_;
  std::set<std::string> used_;
};

Json terms_json(const TermIntegrals& t) {
  return Json{{"theta_grad", t.theta_grad}, {"grad2", t.grad2}, {"quasi", t.quasi},
              {"lq", t.lq},                 {"crit", t.crit},   {"mass", t.mass}};
}

Json breakdown_json(const EnergyBreakdown& b) {
  Json j;
  const auto& cols = EnergyBreakdown::csv_columns();
  const auto row = b.csv_row();
  for (std::size_t i = 0; i < cols.size(); ++i) j[cols[i]] = row[i];
  return j;
}

Json srange_json(const SRange& s) { return Json{{"lo", s.lo}, {"hi", s.hi}, {"samples", s.samples}}; }

SRange srange_from(const Json& j, const std::string& ctx, SRange s) {
  Reader r(j, ctx);
  r.get("lo", s.lo);
  r.get("hi", s.hi);
  r.get("samples", s.samples);
  r.finish();
  if (!(s.lo > 0.0 && s.hi > s.lo && s.samples >= 2))
    throw std::invalid_argument(ctx + " needs 0 < lo < hi and samples >= 2");
  return s;
}

Json optional_json(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

std::string csv_number(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

Json to_json(const ProblemParams& p) {
  return Json{{"dim", p.dim},   {"q", p.q},   {"tau", p.tau},
              {"mass", p.mass}, {"mu", p.mu}, {"theta", p.theta}};
}

Json to_json(const GridSpec& g) {
  return Json{{"dim", g.dim}, {"r_max", g.r_max}, {"n_nodes", g.n_nodes}, {"grading", g.grading}};
}

Json to_json(const SolveConfig& c) {
  Json j;
  j["armijo"] = c.armijo;
  j["step_init"] = c.step_init;
  j["step_grow"] = c.step_grow;
  j["step_shrink"] = c.step_shrink;
  j["step_max"] = c.step_max;
  j["max_backtracks"] = c.max_backtracks;
  j["precond_shift"] = c.precond_shift;
  j["max_iter"] = c.max_iter;
  j["grad_tol"] = c.grad_tol;
  j["pohozaev_tol"] = c.pohozaev_tol;
  j["mass_tol"] = c.mass_tol;
  j["natural_tol"] = c.natural_tol;
  j["rho0"] = optional_json(c.rho0);
  j["mu_schedule"] = c.mu_schedule;
  j["guess"] = Json{{"family", to_string(c.guess.family)},
                    {"width", c.guess.width},
                    {"eps", c.guess.eps},
                    {"alpha", c.guess.alpha}};
  j["fiber_initial"] = srange_json(c.fiber_initial);
  j["fiber_local"] = srange_json(c.fiber_local);
  j["trace_stride"] = c.trace_stride;
  return j;
}

ProblemParams params_from_json(const Json& j, ProblemParams p) {
  Reader r(j, "problem");
  r.get("dim", p.dim);
  r.get("q", p.q);
  r.get("tau", p.tau);
  r.get("mass", p.mass);
  r.get("mu", p.mu);
  r.get("theta", p.theta);
  r.finish();
  return p;
}

GridSpec grid_from_json(const Json& j, GridSpec g) {
  Reader r(j, "grid");
  r.get("dim", g.dim);
  r.get("r_max", g.r_max);
  r.get("n_nodes", g.n_nodes);
  r.get("grading", g.grading);
  r.finish();
  return g;
}

SolveConfig solve_config_from_json(const Json& j, SolveConfig c) {
  Reader r(j, "solve");
  r.get("armijo", c.armijo);
  r.get("step_init", c.step_init);
  r.get("step_grow", c.step_grow);
  r.get("step_shrink", c.step_shrink);
  r.get("step_max", c.step_max);
  r.get("max_backtracks", c.max_backtracks);
  r.get("precond_shift", c.precond_shift);
  r.get("max_iter", c.max_iter);
  r.get("grad_tol", c.grad_tol);
  r.get("pohozaev_tol", c.pohozaev_tol);
  r.get("mass_tol", c.mass_tol);
  r.get("natural_tol", c.natural_tol);
  if (const Json* v = r.sub("rho0")) {
    if (v->is_null()) {
      c.rho0.reset();
    } else if (v->is_number()) {
      c.rho0 = v->get<double>();
    } else {
      throw std::invalid_argument("solve.rho0 must be a number or null");
    }
  }
  r.get("mu_schedule", c.mu_schedule);
  if (const Json* g = r.sub("guess")) {
    Reader gr(*g, "solve.guess");
    std::string family = to_string(c.guess.family);
    gr.get("family", family);
    if (family == "gaussian") {
      c.guess.family = InitialGuess::Family::Gaussian;
    } else if (family == "truncated_bubble") {
      c.guess.family = InitialGuess::Family::TruncatedBubble;
    } else {
      throw std::invalid_argument("solve.guess.family must be gaussian or truncated_bubble");
    }
    gr.get("width", c.guess.width);
    gr.get("eps", c.guess.eps);
    gr.get("alpha", c.guess.alpha);
    gr.finish();
  }
  if (const Json* s = r.sub("fiber_initial")) c.fiber_initial = srange_from(*s, "solve.fiber_initial", c.fiber_initial);
  if (const Json* s = r.sub("fiber_local")) c.fiber_local = srange_from(*s, "solve.fiber_local", c.fiber_local);
  r.get("trace_stride", c.trace_stride);
  r.finish();
  return c;
}

Json to_json(const SolveReport& r, bool with_profile) {
  Json j;
  j["version"] = version();
  j["pipeline"] = r.pipeline;
  j["status"] = to_string(r.status);
  j["iterations"] = r.iterations;
  j["params"] = to_json(r.params);
  if (r.profile.grid) j["grid"] = to_json(r.profile.grid->spec());
  j["level"] = number(r.level);
  j["mass"] = number(r.mass);
  j["lambda_weak"] = number(r.lambda_weak);
  j["lambda_identity"] = number(r.lambda_identity);
  j["pohozaev_residual"] = number(r.pohozaev_residual);
  j["variational_residual"] = number(r.variational_residual);
  j["weak_residual"] = number(r.weak_residual);
  j["breakdown"] = breakdown_json(r.breakdown);
  j["terms"] = terms_json(r.terms);
  const auto& d = r.diagnostics;
  Json dj;
  dj["rho0"] = number(d.rho0);
  dj["xi_final"] = number(d.xi_final);
  dj["max_xi"] = number(d.max_xi);
  dj["boundary_mass_fraction"] = number(d.boundary_mass_fraction);
  dj["tangent_residual"] = number(d.tangent_residual);
  dj["fiber_s"] = number(d.fiber_s);
  dj["fiber_critical_points"] = d.fiber_critical_points;
  dj["exploratory"] = d.exploratory;
  dj["notes"] = d.notes;
  dj["trace"] = Json{{"iteration", d.trace_iteration},
                     {"energy", d.energy_trace},
                     {"theta_term", d.theta_trace},
                     {"residual", d.residual_trace}};
  j["diagnostics"] = dj;
  if (with_profile) j["profile"] = r.profile.values;
  return j;
}

SolveReport report_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("report must be a JSON object");
  for (const char* k : {"pipeline", "status", "params", "grid", "profile"})
    if (!j.contains(k)) throw std::invalid_argument(std::string("report is missing ") + k);
  SolveReport r;
  r.pipeline = j.at("pipeline").get<std::string>();
  r.status = status_from_string(j.at("status").get<std::string>());
  r.iterations = j.value("iterations", 0);
  r.params = params_from_json(j.at("params"));
  const GridPtr grid = make_grid(grid_from_json(j.at("grid")));
  r.profile = RadialField(grid, j.at("profile").get<std::vector<double>>());
  r.profile.validate();
  r.terms = term_integrals(r.profile, r.params.q, r.params.theta);
  r.breakdown = breakdown_from_terms(r.terms, r.params);
  auto num = [&](const char* k, double fallback) { return j.contains(k) ? number_from(j.at(k)) : fallback; };
  r.level = num("level", r.breakdown.total_I);
  r.mass = num("mass", r.terms.mass);
  r.lambda_weak = num("lambda_weak", multiplier_weak(r.terms, r.params));
  r.lambda_identity = num("lambda_identity", multiplier_identity(r.terms, r.params));
  r.pohozaev_residual = num("pohozaev_residual", normalized_pohozaev(r.terms, r.params));
  r.variational_residual = num("variational_residual", 0.0);
  r.weak_residual = num("weak_residual", 0.0);
  if (j.contains("diagnostics")) {
    const Json& d = j.at("diagnostics");
    r.diagnostics.rho0 = d.contains("rho0") ? number_from(d.at("rho0")) : std::numeric_limits<double>::infinity();
    if (d.contains("xi_final")) r.diagnostics.xi_final = number_from(d.at("xi_final"));
    if (d.contains("max_xi")) r.diagnostics.max_xi = number_from(d.at("max_xi"));
    if (d.contains("boundary_mass_fraction"))
      r.diagnostics.boundary_mass_fraction = number_from(d.at("boundary_mass_fraction"));
    if (d.contains("tangent_residual")) r.diagnostics.tangent_residual = number_from(d.at("tangent_residual"));
    if (d.contains("fiber_s")) r.diagnostics.fiber_s = number_from(d.at("fiber_s"));
    r.diagnostics.fiber_critical_points = d.value("fiber_critical_points", 0);
    r.diagnostics.exploratory = d.value("exploratory", false);
    if (d.contains("notes")) r.diagnostics.notes = d.at("notes").get<std::vector<std::string>>();
    if (d.contains("trace")) {
      const Json& t = d.at("trace");
      auto& dg = r.diagnostics;
      dg.trace_iteration = t.value("iteration", std::vector<int>{});
      dg.energy_trace = t.value("energy", std::vector<double>{});
      dg.theta_trace = t.value("theta_term", std::vector<double>{});
      dg.residual_trace = t.value("residual", std::vector<double>{});
    }
  }
  return r;
}

Json to_json(const ThresholdSet& t) {
  Json j;
  j["version"] = version();
  j["dim"] = t.dim;
  j["q"] = t.q;
  j["tau"] = t.tau;
  j["mass"] = t.mass;
  j["sobolev"] = t.sobolev;
  j["level_threshold"] = t.level_threshold;
  j["q_N"] = number(t.qN);
  j["D1"] = number(t.D1);
  j["alpha0"] = number(t.alphas.alpha0);
  j["alpha1"] = number(t.alphas.alpha1);
  j["alpha2"] = number(t.alphas.alpha2);
  j["alphas_in_range"] = t.alphas_in_range;
  j["C1_q"] = optional_json(t.C1_q);
  j["C2_q"] = optional_json(t.C2_q);
  j["K"] = optional_json(t.K);
  j["c0"] = optional_json(t.c0);
  j["rho0"] = optional_json(t.rho0);
  j["rho_c"] = optional_json(t.rho_c);
  j["cbar1"] = optional_json(t.cbar1);
  j["cbar2"] = optional_json(t.cbar2);
  j["cbar3"] = optional_json(t.cbar3);
  j["rho_tilde0"] = optional_json(t.rho_tilde0);
  j["rho_star"] = optional_json(t.rho_star);
  j["notes"] = t.notes;
  return j;
}

Json to_json(const EstimateTable& t) {
  Json j;
  j["version"] = version();
  j["kind"] = t.kind == BubbleKind::Cutoff ? "cutoff" : "truncated";
  j["eps"] = t.eps;
  if (t.kind == BubbleKind::Truncated) {
    j["alpha"] = t.alpha;
    j["beta"] = t.beta;
  }
  j["sobolev_level"] = t.sobolev_level;
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json x;
    x["quantity"] = r.quantity;
    x["limit"] = r.limit;
    Json vals = Json::array(), devs = Json::array();
    for (double v : r.values) vals.push_back(number(v));
    for (double v : r.deviation) devs.push_back(number(v));
    x["values"] = vals;
    x["deviation"] = devs;
    x["expected"] = number(r.expected);
    x["fitted"] = number(r.fitted);
    x["r_squared"] = number(r.r_squared);
    x["band"] = r.band;
    x["log_corrected"] = r.log_corrected;
    x["lower_bound"] = r.lower_bound;
    x["low_fit_quality"] = r.low_fit_quality;
    x["within_band"] = r.within_band;
    rows.push_back(x);
  }
  j["rows"] = rows;
  return j;
}

Json to_json(const PathBound& b) {
  Json j;
  j["version"] = version();
  j["family"] = to_string(b.family);
  j["level_bound"] = number(b.level_bound);
  j["argmax"] = number(b.argmax);
  j["threshold"] = number(b.threshold);
  j["base_level"] = number(b.base_level);
  j["endpoint_value"] = number(b.endpoint_value);
  j["endpoint_ok"] = b.endpoint_ok;
  j["below_threshold"] = b.below_threshold;
  if (b.family == PathFamily::DilatedTruncated) {
    j["alpha"] = b.alpha;
    j["beta"] = b.beta;
  }
  return j;
}

Json to_json(const NonexistenceCertificate& c) {
  Json j;
  j["version"] = version();
  j["params"] = to_json(c.params);
  Json fields = Json::array();
  for (const auto& f : c.fields) fields.push_back(Json{{"label", f.label}, {"rhs", f.rhs}, {"nonpositive", f.nonpositive}});
  j["fields"] = fields;
  Json attempts = Json::array();
  for (std::size_t i = 0; i < c.solver_statuses.size(); ++i)
    attempts.push_back(Json{{"status", to_string(c.solver_statuses[i])}, {"lambda_identity", number(c.solver_lambdas[i])}});
  j["solver_attempts"] = attempts;
  j["identity_nonpositive"] = c.identity_nonpositive;
  j["solvers_consistent"] = c.solvers_consistent;
  j["holds"] = c.holds();
  return j;
}

Json to_json(const VerificationRecord& v) {
  Json j;
  j["check"] = v.check;
  j["inputs_digest"] = v.inputs_digest;
  Json m;
  for (const auto& x : v.measured) m[x.name] = number(x.value);
  j["measured"] = m;
  j["tolerance"] = v.tolerance;
  j["verdict"] = to_string(v.verdict);
  j["anchor"] = v.anchor;
  j["note"] = v.note;
  return j;
}

std::string csv_preamble(const std::string& config_hash) {
  return "# config_hash=" + config_hash + " version=" + version() + "\n";
}

std::string profile_csv(const SolveReport& r, const std::string& config_hash) {
  std::ostringstream os;
  os << csv_preamble(config_hash) << "r,u\n";
  const auto& x = r.profile.grid->r();
  for (std::size_t i = 0; i < x.size(); ++i) os << csv_number(x[i]) << ',' << csv_number(r.profile.values[i]) << '\n';
  return os.str();
}

std::string trace_csv(const SolveReport& r, const std::string& config_hash) {
  std::ostringstream os;
  os << csv_preamble(config_hash) << "iteration,energy,theta_term,residual\n";
  const auto& d = r.diagnostics;
  for (std::size_t i = 0; i < d.trace_iteration.size(); ++i)
    os << d.trace_iteration[i] << ',' << csv_number(d.energy_trace[i]) << ',' << csv_number(d.theta_trace[i]) << ','
       << csv_number(d.residual_trace[i]) << '\n';
  return os.str();
}

std::string verification_csv(const std::vector<VerificationRecord>& v, const std::string& config_hash) {
  std::ostringstream os;
  os << csv_preamble(config_hash) << "check,verdict,measurement,value,tolerance,inputs_digest\n";
  for (const auto& rec : v) {
    if (rec.measured.empty()) {
      os << rec.check << ',' << to_string(rec.verdict) << ",,," << csv_number(rec.tolerance) << ','
         << rec.inputs_digest << '\n';
    }
    for (const auto& m : rec.measured)
      os << rec.check << ',' << to_string(rec.verdict) << ',' << m.name << ',' << csv_number(m.value) << ','
         << csv_number(rec.tolerance) << ',' << rec.inputs_digest << '\n';
  }
  return os.str();
}

std::string path_csv(const PathBound& b, const std::string& config_hash) {
  std::ostringstream os;
  os << csv_preamble(config_hash) << (b.family == PathFamily::WEpsT ? "t" : "s") << ",energy\n";
  for (std::size_t i = 0; i < b.parameter.size(); ++i)
    os << csv_number(b.parameter[i]) << ',' << csv_number(b.values[i]) << '\n';
  return os.str();
}

}  // namespace qnls::io
