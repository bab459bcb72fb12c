// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "qnls/grid.hpp"

namespace qnls {

/// Shape parameters of one random field: a sum of `bumps` Gaussians
/// a_k exp(-((r - r_k)/w_k)^2) with positive amplitudes.
struct CorpusSpec {
  std::size_t count = 100;
  std::uint64_t seed = 20240601;
  int max_bumps = 3;
  double amplitude_lo = 0.1, amplitude_hi = 3.0;
  double width_lo = 0.3, width_hi = 6.0;
  /// Centres are drawn in [0, centre_fraction * r_max].
  double centre_fraction = 0.3;
  void validate() const;
};

/// Deterministic for a given spec and standard library. The last node is
/// zeroed so every field satisfies the decay boundary.
std::vector<RadialField> random_corpus(const GridPtr& grid, const CorpusSpec& spec = {});

}  // namespace qnls
