#ifndef KOLMO_DUAL_HPP_
#define KOLMO_DUAL_HPP_

#include <cstddef>
#include <cstdint>

#include "kolmo/distribution.hpp"

namespace kolmo {

/**
 * A compressed distribution together with its realised error and the
 * counters that witness how much work produced it.
 */
struct Approximation {
  DiscreteDistribution dist;
  /// Realised error: the largest in-group gap c_e - c_f. In strict mode this
  /// is oneSidedExcess(input, dist).
  Probability achievedEpsilon = 0.0;
  /// Number of greedy passes (counting or materialising) spent.
  std::uint64_t dualCalls = 0;
  /// Index advances for the greedy pass; search iterations for optimizers.
  std::uint64_t stepCount = 0;
  /// Largest number of live regions in the divide-and-conquer search.
  std::uint64_t peakRegions = 0;
};

enum class DualMode {
  /// Never undershoots the input CDF.
  kStrict,
  /// Also skips the leading indices with c_f <= epsilon before grouping.
  kPaperLiteral,
};

/**
 * Greedy left-to-right grouping: each group starts at f and extends to the
 * largest e with c_e - c_f <= epsilon + kTolerance, emitting the jump
 * (x_f, c_e). The result is the smallest-support upper approximation within
 * epsilon. Single pass; stepCount <= 2n.
 */
Approximation dualApprox(const DiscreteDistribution& dist, double epsilon,
                         DualMode mode = DualMode::kStrict);

/// Same grouping as dualApprox(strict) but only counts groups.
std::size_t minimalSupportSize(const DiscreteDistribution& dist, double epsilon);

/// minimalSupportSize(dist, epsilon) <= budget, stopping as soon as the
/// group count exceeds budget.
bool supportFits(const DiscreteDistribution& dist, double epsilon, std::size_t budget);

inline constexpr std::size_t kOracleMaxSupport = 20;

// Exhaustive references. Both enumerate every jump set that contains x_1,
// with each jump's value forced to the cum of the last support point before
// the next jump. Exponential in n; refuse n > kOracleMaxSupport.

std::size_t oracleMinimalSupport(const DiscreteDistribution& dist, double epsilon);

/// Minimum one-sided error over jump sets of size <= budget. Ties go to the
/// lexicographically smallest jump set.
Approximation oracleOptimal(const DiscreteDistribution& dist, std::size_t budget);

}  // namespace kolmo

#endif  // KOLMO_DUAL_HPP_
