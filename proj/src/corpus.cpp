// SPDX-License-Identifier: Apache-2.0
#include "qnls/corpus.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qnls {

void CorpusSpec::validate() const {
  if (count == 0) throw std::invalid_argument("corpus.count must be > 0");
  if (max_bumps < 1) throw std::invalid_argument("corpus.max_bumps must be >= 1");
  if (!(amplitude_lo > 0.0 && amplitude_hi >= amplitude_lo))
    throw std::invalid_argument("corpus amplitudes need 0 < lo <= hi");
  if (!(width_lo > 0.0 && width_hi >= width_lo)) throw std::invalid_argument("corpus widths need 0 < lo <= hi");
  if (!(centre_fraction >= 0.0 && centre_fraction < 1.0))
    throw std::invalid_argument("corpus.centre_fraction must lie in [0,1)");
}

std::vector<RadialField> random_corpus(const GridPtr& grid, const CorpusSpec& spec) {
  spec.validate();
  if (!grid) throw std::invalid_argument("random_corpus requires a grid");
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<int> nb(1, spec.max_bumps);
  std::uniform_real_distribution<double> amp(spec.amplitude_lo, spec.amplitude_hi);
  std::uniform_real_distribution<double> wid(spec.width_lo, spec.width_hi);
  std::uniform_real_distribution<double> ctr(0.0, spec.centre_fraction * grid->r_max());

  std::vector<RadialField> out;
  out.reserve(spec.count);
  for (std::size_t k = 0; k < spec.count; ++k) {
    struct Bump { double a, c, w; };
    std::vector<Bump> bumps(static_cast<std::size_t>(nb(rng)));
    for (auto& b : bumps) {
      b.a = amp(rng);
      b.c = ctr(rng);
      b.w = wid(rng);
    }
    RadialField f = RadialField::from_function(grid, [&](double r) {
      double v = 0.0;
      for (const auto& b : bumps) v += b.a * std::exp(-std::pow((r - b.c) / b.w, 2));
      return v;
    });
    f.values.back() = 0.0;
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace qnls
