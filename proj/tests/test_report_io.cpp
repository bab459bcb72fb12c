#include <doctest.h>

#include <openssl/evp.h>

#include <cmath>

#include "qnls/constants.hpp"
#include "qnls/report_io.hpp"

using namespace qnls;

TEST_CASE("sha256 of the FIPS test vector") {
  CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(io::sha256_hex("").substr(0, 8) == "e3b0c442");
}

TEST_CASE("non-finite numbers survive as null") {
  CHECK(io::number(INFINITY).is_null());
  CHECK(io::number(NAN).is_null());
  CHECK(io::number_from(io::Json()) == INFINITY);
  CHECK(io::number_from(io::number(2.5)) == 2.5);
}

TEST_CASE("strict readers") {
  const auto p = io::params_from_json(io::Json{{"dim", 3}, {"q", 3.0}, {"tau", -1.0}});
  CHECK(p.q == 3.0);
  CHECK(p.tau == -1.0);
  CHECK(p.mass == ProblemParams{}.mass);
  CHECK_THROWS_AS(io::params_from_json(io::Json{{"qq", 3.0}}), std::invalid_argument);
  CHECK_THROWS_AS(io::params_from_json(io::Json{{"q", "three"}}), std::invalid_argument);
  CHECK_THROWS_AS(io::grid_from_json(io::Json{{"n_nodes", 2.5}}), std::invalid_argument);
  const auto c = io::solve_config_from_json(io::Json{{"max_iter", 10}, {"mu_schedule", {1e-2, 1e-3}}});
  CHECK(c.max_iter == 10);
  CHECK(c.mu_schedule.size() == 2);
  CHECK_THROWS_AS(io::solve_config_from_json(io::Json{{"guess", {{"family", "banana"}}}}), std::invalid_argument);
}

TEST_CASE("report JSON round-trips byte for byte") {
  ProblemParams p;
  p.q = 2.5;
  p.mass = 0.5 * *thresholds(p).c0;
  SolveConfig c;
  c.max_iter = 30;
  const auto r = local_minimize(p, make_grid(GridSpec{3, 30.0, 600, 1.006}), c);
  const std::string a = io::dump(io::to_json(r));
  const auto back = io::report_from_json(io::Json::parse(a));
  CHECK(io::dump(io::to_json(back)) == a);
  CHECK(back.profile.values == r.profile.values);
  CHECK(back.status == r.status);
  CHECK(a.back() == '\n');
}

TEST_CASE("CSV artifacts carry the config hash and version") {
  SolveReport r;
  r.profile = RadialField::zeros(make_grid(GridSpec{3, 10.0, 50, 1.0}));
  const std::string csv = io::profile_csv(r, "abc123");
  CHECK(csv.rfind("# config_hash=abc123 version=" + io::version(), 0) == 0);
  CHECK(csv.find("\nr,u\n") != std::string::npos);
  CHECK(io::trace_csv(r, "abc123").rfind("# config_hash=abc123", 0) == 0);
}

TEST_CASE("threshold JSON omits nothing") {
  ProblemParams p;
  const auto j = io::to_json(thresholds(p));
  for (const char* k : {"c0", "rho0", "sobolev", "level_threshold", "notes"}) CHECK(j.contains(k));
}
