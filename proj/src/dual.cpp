#include "kolmo/dual.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>
#include <vector>

#include "kolmo/error.hpp"

namespace kolmo {

namespace {

void requireEpsilon(double epsilon) {
  if (!(epsilon >= 0.0)) {
    std::ostringstream out;
    out << "epsilon must be >= 0, got " << epsilon;
    throw Error(ErrorCode::kNegativeEpsilon, out.str());
  }
}

void requireOracleSize(const DiscreteDistribution& dist) {
  if (dist.size() > kOracleMaxSupport) {
    std::ostringstream out;
    out << "support " << dist.size() << " exceeds the oracle limit "
        << kOracleMaxSupport;
    throw Error(ErrorCode::kTooLargeForOracle, out.str());
  }
}

// Error of the jump set encoded by mask (bit k-1 set <=> jump at index k;
// index 0 is always a jump), and its size.
struct JumpSetScore {
  double error;
  std::size_t size;
};

JumpSetScore scoreJumpSet(std::span<const double> cum, std::uint32_t mask) {
  const std::size_t n = cum.size();
  double error = 0.0;
  std::size_t start = 0;
  std::size_t size = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    const bool jump = k < n && ((mask >> (k - 1)) & 1u) != 0;
    if (k == n || jump) {
      error = std::max(error, cum[k - 1] - cum[start]);
      start = k;
      if (jump) ++size;
    }
  }
  return {error, size};
}

std::vector<std::size_t> jumpPositions(std::size_t n, std::uint32_t mask) {
  std::vector<std::size_t> out{0};
  for (std::size_t k = 1; k < n; ++k) {
    if ((mask >> (k - 1)) & 1u) out.push_back(k);
  }
  return out;
}

}  // namespace

Approximation dualApprox(const DiscreteDistribution& dist, double epsilon,
                         DualMode mode) {
  requireEpsilon(epsilon);
  const auto values = dist.values();
  const auto cum = dist.cum();
  const std::size_t n = dist.size();
  const double reach = epsilon + kTolerance;

  std::uint64_t steps = 0;
  double achieved = 0.0;
  std::size_t f = 0;
  if (mode == DualMode::kPaperLiteral) {
    // The last point always opens a group, so the skip stops before it.
    while (f + 1 < n && cum[f] <= reach) {
      ++f;
      ++steps;
    }
    if (f > 0) achieved = cum[f - 1];
  }

  std::vector<double> outValues;
  std::vector<double> outCum;
  while (f < n) {
    std::size_t e = f;
    while (e + 1 < n && cum[e + 1] - cum[f] <= reach) {
      ++e;
      ++steps;
    }
    outValues.push_back(values[f]);
    outCum.push_back(cum[e]);
    achieved = std::max(achieved, cum[e] - cum[f]);
    f = e + 1;
    ++steps;
  }

  return Approximation{
      .dist = DiscreteDistribution::fromStepCdf(std::move(outValues), std::move(outCum)),
      .achievedEpsilon = achieved,
      .dualCalls = 1,
      .stepCount = steps,
  };
}

std::size_t minimalSupportSize(const DiscreteDistribution& dist, double epsilon) {
  requireEpsilon(epsilon);
  const auto cum = dist.cum();
  const std::size_t n = cum.size();
  const double reach = epsilon + kTolerance;
  std::size_t groups = 0;
  std::size_t f = 0;
  while (f < n) {
    std::size_t e = f;
    while (e + 1 < n && cum[e + 1] - cum[f] <= reach) ++e;
    ++groups;
    f = e + 1;
  }
  return groups;
}

bool supportFits(const DiscreteDistribution& dist, double epsilon, std::size_t budget) {
  requireEpsilon(epsilon);
  const auto cum = dist.cum();
  const std::size_t n = cum.size();
  const double reach = epsilon + kTolerance;
  std::size_t groups = 0;
  std::size_t f = 0;
  while (f < n) {
    if (++groups > budget) return false;
    std::size_t e = f;
    while (e + 1 < n && cum[e + 1] - cum[f] <= reach) ++e;
    f = e + 1;
  }
  return true;
}

std::size_t oracleMinimalSupport(const DiscreteDistribution& dist, double epsilon) {
  requireEpsilon(epsilon);
  requireOracleSize(dist);
  const auto cum = dist.cum();
  const std::size_t n = cum.size();
  const std::uint32_t subsets = std::uint32_t{1} << (n - 1);
  std::size_t best = n;
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    const JumpSetScore score = scoreJumpSet(cum, mask);
    if (score.size < best && score.error <= epsilon + kTolerance) best = score.size;
  }
  return best;
}

Approximation oracleOptimal(const DiscreteDistribution& dist, std::size_t budget) {
  if (budget < 1) {
    throw Error(ErrorCode::kInvalidBudget, "budget m must be at least 1");
  }
  requireOracleSize(dist);
  const auto cum = dist.cum();
  const std::size_t n = cum.size();
  const std::uint32_t subsets = std::uint32_t{1} << (n - 1);

  double bestError = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> bestJumps;
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) + 1 > budget) continue;
    const JumpSetScore score = scoreJumpSet(cum, mask);
    if (score.error > bestError) continue;
    std::vector<std::size_t> jumps = jumpPositions(n, mask);
    if (score.error < bestError ||
        std::lexicographical_compare(jumps.begin(), jumps.end(), bestJumps.begin(),
                                     bestJumps.end())) {
      bestError = score.error;
      bestJumps = std::move(jumps);
    }
  }

  std::vector<double> outValues;
  std::vector<double> outCum;
  for (std::size_t r = 0; r < bestJumps.size(); ++r) {
    const std::size_t last = r + 1 < bestJumps.size() ? bestJumps[r + 1] - 1 : n - 1;
    outValues.push_back(dist.values()[bestJumps[r]]);
    outCum.push_back(cum[last]);
  }
  return Approximation{
      .dist = DiscreteDistribution::fromStepCdf(std::move(outValues), std::move(outCum)),
      .achievedEpsilon = bestError,
      .dualCalls = 0,
      .stepCount = subsets,
  };
}

}  // namespace kolmo
