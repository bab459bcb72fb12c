// SPDX-License-Identifier: Apache-2.0
#include "app.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qnls/constants.hpp"
#include "qnls/shooting.hpp"
#include "qnls/verify.hpp"

namespace qnls::app {

namespace fs = std::filesystem;

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"constants",    "bubbles",   "solve-min", "solve-gs", "continuation",
                                              "path-bound",   "nonexistence", "verify",  "sweep"};
  return names;
}

namespace {

// Collects artifacts for one subcommand; every file name carries the hash.
class Writer {
public:
  Writer(const RunConfig& cfg, std::string sub)
      : cfg_(cfg), sub_(std::move(sub)), hash_(config_hash(cfg, sub_)), dir_(cfg.out_dir) {
    fs::create_directories(dir_);
  }

  const std::string& hash() const { return hash_; }

  Json envelope(Json result) const {
    Json j;
    j["version"] = io::version();
    j["config_hash"] = hash_;
    j["subcommand"] = sub_;
    j["config"] = canonical_json(cfg_);
    j["result"] = std::move(result);
    return j;
  }

  void write(Outcome& out, const std::string& suffix, const std::string& text) {
    const fs::path p = dir_ / (sub_ + "-" + hash_ + suffix);
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << text;
    out.files.push_back(p.string());
  }

  void write_json(Outcome& out, Json result, const std::string& suffix = ".json") {
    write(out, suffix, io::dump(envelope(std::move(result))));
  }

private:
  const RunConfig& cfg_;
  std::string sub_;
  std::string hash_;
  fs::path dir_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

std::string csv(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string report_line(const SolveReport& r) {
  std::ostringstream os;
  os << r.pipeline << ": " << to_string(r.status) << " after " << r.iterations << " iterations, level "
     << fmt(r.level) << ", lambda " << fmt(r.lambda_weak) << " / " << fmt(r.lambda_identity) << ", |Q| "
     << fmt(r.pohozaev_residual) << "\n";
  for (const auto& n : r.diagnostics.notes) os << "  note: " << n << "\n";
  return os.str();
}

void write_report(Writer& w, Outcome& out, const SolveReport& r) {
  w.write_json(out, io::to_json(r));
  w.write(out, "-profile.csv", io::profile_csv(r, w.hash()));
  w.write(out, "-trace.csv", io::trace_csv(r, w.hash()));
  out.summary += report_line(r);
  if (r.status != Status::Converged) out.exit_code = kExitSolver;
}

Outcome cmd_constants(const RunConfig& cfg) {
  Outcome out;
  Writer w(cfg, "constants");
  const ThresholdSet t = thresholds(cfg.problem);
  const Json j = io::to_json(t);
  w.write_json(out, j);
  std::ostringstream os;
  os << io::csv_preamble(w.hash()) << "name,value\n";
  std::ostringstream sum;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) continue;
    os << k << ',' << csv(v.get<double>()) << '\n';
    sum << "  " << std::left << std::setw(16) << k << fmt(v.get<double>()) << '\n';
  }
  for (const auto& n : t.notes) sum << "  note: " << n << '\n';
  w.write(out, ".csv", os.str());
  out.summary = sum.str();
  return out;
}

Outcome cmd_bubbles(const RunConfig& cfg) {
  Outcome out;
  Writer w(cfg, "bubbles");
  const EstimateTable t = estimate_suite(cfg.bubbles.kind, cfg.bubbles.eps, cfg.bubbles.options);
  w.write_json(out, io::to_json(t));
  std::ostringstream os;
  os << io::csv_preamble(w.hash()) << "quantity,expected,fitted,r_squared,band,log_corrected,lower_bound,within_band\n";
  for (const auto& r : t.rows) {
    os << r.quantity << ',' << csv(r.expected) << ',' << csv(r.fitted) << ',' << csv(r.r_squared) << ','
       << csv(r.band) << ',' << r.log_corrected << ',' << r.lower_bound << ',' << r.within_band << '\n';
    out.summary += "  " + r.quantity + ": fitted " + fmt(r.fitted) + " expected " + fmt(r.expected) +
                   (r.within_band ? "  (within band)" : "  (outside band)") + "\n";
  }
  w.write(out, ".csv", os.str());
  return out;
}

Outcome cmd_solve(const RunConfig& cfg, bool ground_state) {
  Outcome out;
  Writer w(cfg, ground_state ? "solve-gs" : "solve-min");
  const GridPtr grid = make_grid(cfg.grid);
  const SolveReport r =
      ground_state ? ground_state_level(cfg.problem, grid, cfg.solve) : local_minimize(cfg.problem, grid, cfg.solve);
  write_report(w, out, r);
  return out;
}

Outcome cmd_continuation(const RunConfig& cfg) {
  if (cfg.solve.mu_schedule.empty()) throw std::invalid_argument("continuation needs solve.mu_schedule");
  Outcome out;
  Writer w(cfg, "continuation");
  const GridPtr grid = make_grid(cfg.grid);
  const auto stages = mu_continuation(cfg.problem, grid, cfg.solve);
  Json arr = Json::array();
  std::ostringstream os;
  os << io::csv_preamble(w.hash()) << "mu,status,iterations,level,theta_term,lambda_weak,lambda_identity,lambda_step\n";
  double prev = NAN;
  for (const auto& r : stages) {
    arr.push_back(io::to_json(r));
    const double step = std::isnan(prev) ? NAN : std::abs(r.lambda_weak - prev);
    prev = r.lambda_weak;
    os << csv(r.params.mu) << ',' << to_string(r.status) << ',' << r.iterations << ',' << csv(r.level) << ','
       << csv(r.params.mu * r.terms.theta_grad) << ',' << csv(r.lambda_weak) << ',' << csv(r.lambda_identity) << ','
       << csv(step) << '\n';
    out.summary += "  mu " + fmt(r.params.mu) + ": " + report_line(r);
    if (r.status != Status::Converged) out.exit_code = kExitSolver;
  }
  if (stages.size() < cfg.solve.mu_schedule.size()) out.exit_code = kExitSolver;
  w.write_json(out, arr);
  w.write(out, ".csv", os.str());
  return out;
}

Outcome cmd_path(const RunConfig& cfg) {
  Outcome out;
  Writer w(cfg, "path-bound");
  Json result;
  std::optional<SolveReport> base;
  if (cfg.path.family == PathFamily::WEpsT) {
    base = local_minimize(cfg.problem, make_grid(cfg.grid), cfg.solve);
    result["base"] = io::to_json(*base, false);
    out.summary += "base " + report_line(*base);
    if (base->status != Status::Converged) {
      out.exit_code = kExitSolver;
      w.write_json(out, result);
      return out;
    }
  }
  const PathBound b = path_energy_bound(cfg.problem, base ? &base->profile : nullptr, cfg.path.family, cfg.path.options);
  result["path"] = io::to_json(b);
  w.write_json(out, result);
  w.write(out, ".csv", io::path_csv(b, w.hash()));
  out.summary += "  sup along path " + fmt(b.level_bound) + " at " + fmt(b.argmax) + ", threshold " +
                 fmt(b.threshold) + (b.below_threshold ? " (below)" : " (not below)") + "\n";
  if (!b.endpoint_ok) out.summary += "  note: path end did not reach the required energy\n";
  return out;
}

Outcome cmd_nonexistence(const RunConfig& cfg) {
  Outcome out;
  Writer w(cfg, "nonexistence");
  const GridPtr grid = make_grid(cfg.grid);
  const auto fields = random_corpus(grid, cfg.corpus);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < fields.size(); ++i) labels.push_back("corpus-" + std::to_string(i));
  std::vector<SolveReport> attempts;
  attempts.push_back(local_minimize(cfg.problem, grid, cfg.solve));
  const auto cert = nonexistence_check(cfg.problem, fields, attempts, labels);
  w.write_json(out, io::to_json(cert));
  std::ostringstream os;
  os << io::csv_preamble(w.hash()) << "label,rhs,nonpositive\n";
  double worst = -INFINITY;
  for (const auto& f : cert.fields) {
    os << f.label << ',' << csv(f.rhs) << ',' << f.nonpositive << '\n';
    worst = std::max(worst, f.rhs);
  }
  w.write(out, ".csv", os.str());
  out.summary = "  largest identity value over " + std::to_string(cert.fields.size()) + " fields: " + fmt(worst) +
                "\n  solver attempt: " + to_string(attempts.front().status) + "\n  certificate " +
                (cert.holds() ? "holds" : "does not hold") + "\n";
  if (!cert.holds()) out.exit_code = kExitSolver;
  return out;
}

Outcome cmd_verify(const RunConfig& cfg) {
  if (cfg.report.empty()) throw std::invalid_argument("verify needs a report (verify.report or --report)");
  Json j = load_config_file(cfg.report);
  if (j.contains("result") && j.at("result").is_object()) j = j.at("result");
  const SolveReport r = io::report_from_json(j);
  Outcome out;
  Writer w(cfg, "verify");
  const auto records = verify_battery(r);
  Json arr = Json::array();
  for (const auto& v : records) arr.push_back(io::to_json(v));
  w.write_json(out, arr);
  w.write(out, ".csv", io::verification_csv(records, w.hash()));
  std::ostringstream sum;
  for (const auto& v : records) {
    sum << "  " << std::left << std::setw(24) << v.check << std::setw(14) << to_string(v.verdict);
    for (const auto& m : v.measured) sum << ' ' << m.name << '=' << fmt(m.value);
    sum << '\n';
    if (v.verdict == Verdict::Fail) out.exit_code = kExitSolver;
  }
  out.summary = sum.str();
  return out;
}

struct SweepPoint {
  ProblemParams params;
  std::string hash;
  std::optional<SolveReport> report;
  std::string error;
  bool invalid = false;
};

Outcome cmd_sweep(const RunConfig& cfg) {
  if (cfg.sweep.empty()) throw std::invalid_argument("sweep needs at least one non-empty axis");
  Outcome out;
  Writer w(cfg, "sweep");
  auto values = [](const std::vector<double>& axis, double base) {
    return axis.empty() ? std::vector<double>{base} : axis;
  };
  std::vector<SweepPoint> points;
  for (double c : values(cfg.sweep.mass, cfg.problem.mass))
    for (double tau : values(cfg.sweep.tau, cfg.problem.tau))
      for (double q : values(cfg.sweep.q, cfg.problem.q))
        for (double mu : values(cfg.sweep.mu, cfg.problem.mu)) {
          SweepPoint pt;
          pt.params = cfg.problem;
          pt.params.mass = c;
          pt.params.tau = tau;
          pt.params.q = q;
          pt.params.mu = mu;
          RunConfig one = cfg;
          one.problem = pt.params;
          one.mass_over_c0 = 0.0;
          one.sweep = {};
          pt.hash = config_hash(one, "sweep-point");
          points.push_back(pt);
        }

  const GridPtr grid = make_grid(cfg.grid);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      SweepPoint& pt = points[i];
      try {
        pt.params.validate();
        const Pipeline pl = pipeline_for(pt.params);
        pt.report = pl == Pipeline::LocalMin ? local_minimize(pt.params, grid, cfg.solve)
                                             : ground_state_level(pt.params, grid, cfg.solve);
      } catch (const std::invalid_argument& e) {
        pt.error = e.what();
        pt.invalid = true;
      } catch (const std::exception& e) {
        pt.error = e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(points.size())));
  std::vector<std::thread> pool;
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream os;
  os << io::csv_preamble(w.hash())
     << "index,mass,tau,q,mu,pipeline,status,iterations,level,lambda_weak,lambda_identity,pohozaev_residual,file\n";
  const fs::path dir(cfg.out_dir);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SweepPoint& pt = points[i];
    os << i << ',' << csv(pt.params.mass) << ',' << csv(pt.params.tau) << ',' << csv(pt.params.q) << ','
       << csv(pt.params.mu) << ',';
    if (!pt.report) {
      os << ",error,,,,,,\n";
      out.summary += "  point " + std::to_string(i) + ": " + pt.error + "\n";
      out.exit_code = std::max(out.exit_code, pt.invalid ? kExitValidation : kExitSolver);
      continue;
    }
    const SolveReport& r = *pt.report;
    const fs::path file = dir / ("sweep-" + w.hash() + "-" + pt.hash + ".json");
    {
      std::ofstream f(file, std::ios::binary);
      f << io::dump(w.envelope(io::to_json(r)));
    }
    out.files.push_back(file.string());
    os << r.pipeline << ',' << to_string(r.status) << ',' << r.iterations << ',' << csv(r.level) << ','
       << csv(r.lambda_weak) << ',' << csv(r.lambda_identity) << ',' << csv(r.pohozaev_residual) << ','
       << file.filename().string() << '\n';
    out.summary += "  point " + std::to_string(i) + " (c " + fmt(pt.params.mass) + ", tau " + fmt(pt.params.tau) +
                   ", q " + fmt(pt.params.q) + ", mu " + fmt(pt.params.mu) + "): " + report_line(r);
    if (r.status != Status::Converged) out.exit_code = std::max(out.exit_code, kExitSolver);
  }
  w.write(out, ".csv", os.str());
  return out;
}

}  // namespace

Outcome run_subcommand(const std::string& name, const RunConfig& cfg) {
  if (name == "constants") return cmd_constants(cfg);
  if (name == "bubbles") return cmd_bubbles(cfg);
  if (name == "solve-min") return cmd_solve(cfg, false);
  if (name == "solve-gs") return cmd_solve(cfg, true);
  if (name == "continuation") return cmd_continuation(cfg);
  if (name == "path-bound") return cmd_path(cfg);
  if (name == "nonexistence") return cmd_nonexistence(cfg);
  if (name == "verify") return cmd_verify(cfg);
  if (name == "sweep") return cmd_sweep(cfg);
  throw std::invalid_argument("unknown subcommand " + name);
}

int run(int argc, char** argv) {
  CLI::App app{"Normalized solutions of a quasilinear Schrodinger problem: constants, solvers and checks"};
  app.set_version_flag("--version", io::version());
  std::string config_path, out_dir, report_path;
  int jobs = 0;
  std::optional<std::uint64_t> seed;
  app.add_option("-c,--config", config_path, "JSON run configuration (comments allowed)");
  app.add_option("-o,--out", out_dir, "output directory (overrides output.dir)");
  app.add_option("-j,--jobs", jobs, "concurrent sweep points")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for random corpora (overrides seed)");
  app.add_option("--report", report_path, "report JSON consumed by verify (overrides verify.report)");
  app.footer(
      "Environment: QNLS_SECTION__KEY=value overrides section.key of the config file,\n"
      "e.g. QNLS_PROBLEM__TAU=2 or QNLS_SOLVE__MAX_ITER=500. Flags win over the environment.\n"
      "Exit codes: 0 success, 1 usage, 2 invalid configuration, 3 solver or check failure.");
  app.fallthrough();
  app.require_subcommand(1, 1);
  for (const auto& s : subcommands()) app.add_subcommand(s, "run " + s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  try {
    Json j = config_path.empty() ? Json::object() : load_config_file(config_path);
    apply_env_overrides(j, qnls_environment());
    if (!out_dir.empty()) j["output"]["dir"] = out_dir;
    if (jobs > 0) j["jobs"] = jobs;
    if (seed) j["seed"] = *seed;
    if (!report_path.empty()) j["verify"]["report"] = report_path;
    cfg = parse_run_config(j);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    const Outcome o = run_subcommand(sub, cfg);
    std::cout << sub << " [" << config_hash(cfg, sub) << "]\n" << o.summary;
    for (const auto& f : o.files) std::cout << "  wrote " << f << "\n";
    return o.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
}

}  // namespace qnls::app
