#include <doctest.h>

#include "qnls/corpus.hpp"

using namespace qnls;

TEST_CASE("corpus is deterministic for a seed") {
  auto g = make_grid(GridSpec{3, 20.0, 300, 1.005});
  const auto a = random_corpus(g, CorpusSpec{25, 11});
  const auto b = random_corpus(g, CorpusSpec{25, 11});
  const auto c = random_corpus(g, CorpusSpec{25, 12});
  REQUIRE(a.size() == 25);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].values == b[i].values);
  CHECK(a[0].values != c[0].values);
}

TEST_CASE("corpus fields are positive inside and vanish at the boundary") {
  auto g = make_grid(GridSpec{3, 20.0, 300, 1.005});
  for (const auto& u : random_corpus(g, CorpusSpec{40})) {
    CHECK(u.values.back() == 0.0);
    CHECK(u[0] > 0.0);
    for (std::size_t i = 0; i + 1 < u.size(); ++i) CHECK(u[i] >= 0.0);
  }
}

TEST_CASE("corpus spec validation") {
  CorpusSpec s;
  s.count = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {};
  s.width_lo = 7.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {};
  s.max_bumps = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
