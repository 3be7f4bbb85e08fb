#include "kolmo/candidate_matrix.hpp"

#include <algorithm>
#include <bit>

namespace kolmo {

CandidateMatrix::CandidateMatrix(std::span<const double> cum)
    : cum_(cum),
      n_(cum.size()),
      rows_(std::bit_ceil(cum.size())),
      cols_(std::bit_ceil(cum.size() + 1)) {}

std::array<MatrixRegion, 4> split(const MatrixRegion& region) {
  const auto [i1, j1] = region.topLeft;
  const auto [i2, j2] = region.bottomRight;
  const std::size_t jLow = (j1 + j2) / 2;
  const std::size_t jHigh = (j1 + j2 + 1) / 2;
  const std::size_t iLow = (i1 + i2) / 2;
  const std::size_t iHigh = (i1 + i2 + 1) / 2;
  return {{
      {{i1, j1}, {iLow, jLow}},
      {{i1, jHigh}, {iLow, j2}},
      {{iHigh, j1}, {i2, jLow}},
      {{iHigh, jHigh}, {i2, j2}},
  }};
}

std::vector<double> candidateList(const DiscreteDistribution& dist) {
  const auto cum = dist.cum();
  const std::size_t n = cum.size();
  std::vector<double> all;
  all.reserve(n * (n - 1) / 2 + n + 2);
  all.push_back(0.0);
  all.push_back(1.0);
  for (std::size_t j = 0; j < n; ++j) {
    all.push_back(cum[j]);
    for (std::size_t i = 0; i < j; ++i) all.push_back(cum[j] - cum[i]);
  }
  std::sort(all.begin(), all.end());

  std::size_t kept = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (kept == 0 || all[k] - all[kept - 1] > kTolerance) all[kept++] = all[k];
  }
  all.resize(kept);
  return all;
}

}  // namespace kolmo
