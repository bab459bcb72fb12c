// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qnls/constants.hpp"

extern char** environ;

namespace qnls::app {

namespace {

void only_keys(const Json& j, const std::string& ctx, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw std::invalid_argument(ctx + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) throw std::invalid_argument("unknown key " + ctx + "." + k);
}

template <class T>
T get_or(const Json& j, const char* key, const std::string& ctx, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const std::exception&) {
    throw std::invalid_argument(ctx + "." + key + " has the wrong type");
  }
}

std::vector<double> axis(const Json& j, const char* key) {
  auto v = get_or<std::vector<double>>(j, key, "sweep", {});
  return v;
}

BetaMode beta_mode_from(const std::string& s, const std::string& ctx) {
  if (s == "exact") return BetaMode::Exact;
  if (s == "asymptotic") return BetaMode::Asymptotic;
  throw std::invalid_argument(ctx + ".beta_mode must be exact or asymptotic");
}

std::string beta_mode_name(BetaMode m) { return m == BetaMode::Exact ? "exact" : "asymptotic"; }

}  // namespace

void RunConfig::validate() const {
  problem.validate();
  grid.validate();
  solve.validate();
  if (grid.dim != problem.dim) throw std::invalid_argument("grid.dim must equal problem.dim");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  for (double c : sweep.mass)
    if (!(c > 0.0)) throw std::invalid_argument("sweep.mass values must be > 0");
  for (double m : sweep.mu)
    if (!(m >= 0.0 && m <= 1.0)) throw std::invalid_argument("sweep.mu values must lie in [0,1]");
  corpus.validate();
}

Json load_config_text(const std::string& text) {
  try {
    return Json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return load_config_text(os.str());
}

void apply_env_overrides(Json& j, const std::vector<std::pair<std::string, std::string>>& env) {
  for (const auto& [name, value] : env) {
    if (name.rfind("QNLS_", 0) != 0) continue;
    std::string rest = name.substr(5);
    std::transform(rest.begin(), rest.end(), rest.begin(), [](unsigned char c) { return std::tolower(c); });
    std::vector<std::string> path;
    std::size_t pos = 0;
    while (true) {
      const std::size_t next = rest.find("__", pos);
      path.push_back(rest.substr(pos, next - pos));
      if (next == std::string::npos) break;
      pos = next + 2;
    }
    Json parsed;
    try {
      parsed = Json::parse(value);
    } catch (const Json::parse_error&) {
      parsed = value;
    }
    Json* node = &j;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      if (!node->contains(path[i])) (*node)[path[i]] = Json::object();
      node = &(*node)[path[i]];
      if (!node->is_object()) throw std::invalid_argument("environment override " + name + " targets a non-object");
    }
    (*node)[path.back()] = parsed;
  }
}

std::vector<std::pair<std::string, std::string>> qnls_environment() {
  std::vector<std::pair<std::string, std::string>> out;
  for (char** e = environ; e && *e; ++e) {
    const std::string kv = *e;
    if (kv.rfind("QNLS_", 0) != 0) continue;
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) continue;
    out.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

RunConfig parse_run_config(const Json& j) {
  only_keys(j, "config",
            {"problem", "grid", "solve", "sweep", "bubbles", "path", "corpus", "verify", "output", "seed", "jobs"});
  RunConfig c;
  c.seed = get_or<std::uint64_t>(j, "seed", "config", c.seed);
  c.jobs = get_or<int>(j, "jobs", "config", c.jobs);

  if (j.contains("problem")) {
    Json p = j.at("problem");
    if (!p.is_object()) throw std::invalid_argument("problem must be an object");
    if (p.contains("mass_over_c0")) {
      c.mass_over_c0 = get_or<double>(p, "mass_over_c0", "problem", 0.0);
      if (!(c.mass_over_c0 > 0.0)) throw std::invalid_argument("problem.mass_over_c0 must be > 0");
      if (p.contains("mass")) throw std::invalid_argument("give problem.mass or problem.mass_over_c0, not both");
      p.erase("mass_over_c0");
    }
    const bool has_theta = p.contains("theta");
    c.problem = io::params_from_json(p);
    if (!has_theta) c.problem.theta = default_theta(c.problem.dim);
  }
  c.problem.validate();
  if (c.mass_over_c0 > 0.0) {
    const ThresholdSet t = thresholds(c.problem);
    if (!t.c0) throw std::invalid_argument("problem.mass_over_c0 needs c0, which is undefined for these parameters");
    c.problem.mass = c.mass_over_c0 * *t.c0;
  }

  c.grid.dim = c.problem.dim;
  if (j.contains("grid")) c.grid = io::grid_from_json(j.at("grid"), c.grid);
  if (j.contains("solve")) c.solve = io::solve_config_from_json(j.at("solve"));

  if (j.contains("sweep")) {
    const Json& s = j.at("sweep");
    only_keys(s, "sweep", {"mass", "tau", "q", "mu"});
    c.sweep.mass = axis(s, "mass");
    c.sweep.tau = axis(s, "tau");
    c.sweep.q = axis(s, "q");
    c.sweep.mu = axis(s, "mu");
  }

  c.bubbles.options.dim = c.problem.dim;
  if (j.contains("bubbles")) {
    const Json& b = j.at("bubbles");
    only_keys(b, "bubbles", {"kind", "eps", "dim", "q", "theta", "mass", "alpha", "beta_mode"});
    const auto kind = get_or<std::string>(b, "kind", "bubbles", "cutoff");
    if (kind == "cutoff") {
      c.bubbles.kind = BubbleKind::Cutoff;
    } else if (kind == "truncated") {
      c.bubbles.kind = BubbleKind::Truncated;
    } else {
      throw std::invalid_argument("bubbles.kind must be cutoff or truncated");
    }
    c.bubbles.eps = get_or(b, "eps", "bubbles", c.bubbles.eps);
    auto& o = c.bubbles.options;
    o.dim = get_or(b, "dim", "bubbles", o.dim);
    o.q = get_or(b, "q", "bubbles", o.q);
    o.theta = get_or(b, "theta", "bubbles", o.theta);
    o.mass = get_or(b, "mass", "bubbles", o.mass);
    o.alpha = get_or(b, "alpha", "bubbles", o.alpha);
    o.beta_mode = beta_mode_from(get_or<std::string>(b, "beta_mode", "bubbles", beta_mode_name(o.beta_mode)), "bubbles");
  }

  if (j.contains("path")) {
    const Json& p = j.at("path");
    only_keys(p, "path", {"family", "eps", "alpha", "beta_mode", "samples"});
    const auto fam = get_or<std::string>(p, "family", "path", "dilated_truncated");
    if (fam == "dilated_truncated") {
      c.path.family = PathFamily::DilatedTruncated;
    } else if (fam == "w_eps_t") {
      c.path.family = PathFamily::WEpsT;
    } else {
      throw std::invalid_argument("path.family must be dilated_truncated or w_eps_t");
    }
    auto& o = c.path.options;
    o.eps = get_or(p, "eps", "path", o.eps);
    o.alpha = get_or(p, "alpha", "path", o.alpha);
    o.samples = get_or(p, "samples", "path", o.samples);
    o.beta_mode = beta_mode_from(get_or<std::string>(p, "beta_mode", "path", beta_mode_name(o.beta_mode)), "path");
  }

  c.corpus.seed = c.seed;
  if (j.contains("corpus")) {
    const Json& k = j.at("corpus");
    only_keys(k, "corpus", {"count", "seed", "max_bumps", "amplitude_lo", "amplitude_hi", "width_lo", "width_hi",
                            "centre_fraction"});
    c.corpus.count = get_or(k, "count", "corpus", c.corpus.count);
    c.corpus.seed = get_or(k, "seed", "corpus", c.corpus.seed);
    c.corpus.max_bumps = get_or(k, "max_bumps", "corpus", c.corpus.max_bumps);
    c.corpus.amplitude_lo = get_or(k, "amplitude_lo", "corpus", c.corpus.amplitude_lo);
    c.corpus.amplitude_hi = get_or(k, "amplitude_hi", "corpus", c.corpus.amplitude_hi);
    c.corpus.width_lo = get_or(k, "width_lo", "corpus", c.corpus.width_lo);
    c.corpus.width_hi = get_or(k, "width_hi", "corpus", c.corpus.width_hi);
    c.corpus.centre_fraction = get_or(k, "centre_fraction", "corpus", c.corpus.centre_fraction);
  }

  if (j.contains("verify")) {
    const Json& v = j.at("verify");
    only_keys(v, "verify", {"report"});
    c.report = get_or<std::string>(v, "report", "verify", "");
  }
  if (j.contains("output")) {
    const Json& o = j.at("output");
    only_keys(o, "output", {"dir"});
    c.out_dir = get_or<std::string>(o, "dir", "output", c.out_dir);
  }
  c.validate();
  return c;
}

Json canonical_json(const RunConfig& c) {
  Json j;
  j["problem"] = io::to_json(c.problem);
  j["mass_over_c0"] = c.mass_over_c0;
  j["grid"] = io::to_json(c.grid);
  j["solve"] = io::to_json(c.solve);
  j["sweep"] = Json{{"mass", c.sweep.mass}, {"tau", c.sweep.tau}, {"q", c.sweep.q}, {"mu", c.sweep.mu}};
  const auto& o = c.bubbles.options;
  j["bubbles"] = Json{{"kind", c.bubbles.kind == BubbleKind::Cutoff ? "cutoff" : "truncated"},
                      {"eps", c.bubbles.eps},
                      {"dim", o.dim},
                      {"q", o.q},
                      {"theta", o.theta},
                      {"mass", o.mass},
                      {"alpha", o.alpha},
                      {"beta_mode", beta_mode_name(o.beta_mode)}};
  const auto& po = c.path.options;
  j["path"] = Json{{"family", to_string(c.path.family)},
                   {"eps", po.eps},
                   {"alpha", po.alpha},
                   {"beta_mode", beta_mode_name(po.beta_mode)},
                   {"samples", po.samples}};
  const auto& k = c.corpus;
  j["corpus"] = Json{{"count", k.count},
                     {"seed", k.seed},
                     {"max_bumps", k.max_bumps},
                     {"amplitude_lo", k.amplitude_lo},
                     {"amplitude_hi", k.amplitude_hi},
                     {"width_lo", k.width_lo},
                     {"width_hi", k.width_hi},
                     {"centre_fraction", k.centre_fraction}};
  j["verify"] = Json{{"report", c.report}};
  j["seed"] = c.seed;
  return j;
}

std::string config_hash(const RunConfig& c, const std::string& subcommand) {
  Json j = canonical_json(c);
  j["subcommand"] = subcommand;
  return io::sha256_hex(j.dump()).substr(0, 12);
}

}  // namespace qnls::app
