#ifndef KOLMO_OPTIMIZERS_HPP_
#define KOLMO_OPTIMIZERS_HPP_

#include <cstddef>
#include <optional>
#include <string_view>

#include "kolmo/distribution.hpp"
#include "kolmo/dual.hpp"

namespace kolmo {

// All optimizers return the optimal one-sided m-approximation: the
// smallest-support upper approximation whose one-sided error is minimal
// among supports of size <= m. They differ only in how they find the
// smallest feasible candidate error e (feasible: support of the greedy
// grouping at e is <= m). Each finishes with dualApprox(dist, e, strict), so
// all of them return the same distribution for the same input.

inline constexpr std::size_t kDefaultBinsearchMaxSupport = 4096;

/// Binary search over the materialised candidate list. O(n^2) memory, so
/// inputs above max_support are refused with InputTooLarge.
Approximation binsApprox(const DiscreteDistribution& dist, std::size_t budget,
                         std::size_t max_support = kDefaultBinsearchMaxSupport);

/// Saddleback walk over the candidate matrix from the top-right corner.
/// At most 2n + 1 steps, one greedy pass per step.
Approximation sdlbkApprox(const DiscreteDistribution& dist, std::size_t budget);

/**
 * Divide-and-conquer search over the padded candidate matrix.
 *
 * Every round quarters the live regions, takes the median of their top-left
 * entries and the median of their bottom-right entries as pivots, and tests
 * each pivot with one greedy pass. A feasible pivot lowers the best known
 * value, an infeasible one raises the lower bound, and regions that can no
 * longer hold a value strictly between the two bounds are dropped.
 *
 * The live set is never stored. At a given depth all regions share one
 * shape, and a region is live iff its top-left entry is below the best
 * feasible value and its bottom-right entry is above the largest infeasible
 * one; because the matrix is sorted, the live regions of each block row form
 * one contiguous run whose ends move monotonically, so counts and medians
 * come from pointer sweeps over the block grid. Working memory is a handful
 * of scalars regardless of n.
 */
Approximation linApprox(const DiscreteDistribution& dist, std::size_t budget);

enum class Algorithm { kBinsearch, kSaddleback, kLinear, kOracle };

std::string_view algorithmName(Algorithm algorithm);
std::optional<Algorithm> parseAlgorithm(std::string_view name);

/// Dispatches to one of the optimizers. Returns the input unchanged (error 0,
/// no greedy passes) when budget >= support size.
Approximation compress(const DiscreteDistribution& dist, std::size_t budget,
                       Algorithm algorithm);

}  // namespace kolmo

#endif  // KOLMO_OPTIMIZERS_HPP_
