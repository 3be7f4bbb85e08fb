#ifndef KOLMO_TESTS_RANDOM_TREES_HPP_
#define KOLMO_TESTS_RANDOM_TREES_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "kolmo/io.hpp"
#include "kolmo/schedule.hpp"

namespace kolmo::testing {

// Random series-parallel tree with at most maxLeaves leaves, depth at most
// maxDepth (a lone leaf has depth 1) and leaf supports of 1..maxSupport.
class TreeGenerator {
 public:
  TreeGenerator(std::uint64_t seed, std::size_t maxLeaves = 5, std::size_t maxDepth = 3,
                std::size_t maxSupport = 6)
      : rng_(seed), maxLeaves_(maxLeaves), maxDepth_(maxDepth), maxSupport_(maxSupport) {}

  ScheduleNode next() { return grow(maxDepth_, pick(1, maxLeaves_)); }

 private:
  std::size_t pick(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  ScheduleNode grow(std::size_t depth, std::size_t leaves) {
    if (depth == 1 || leaves < 2) {
      return ScheduleNode::leaf(generateRandomInstance(pick(1, maxSupport_), rng_(), 64));
    }
    const std::size_t arity = pick(2, std::min<std::size_t>(3, leaves));
    // Spread the leaves over the children, each getting at least one.
    std::vector<std::size_t> share(arity, 1);
    for (std::size_t extra = leaves - arity; extra > 0; --extra) ++share[pick(0, arity - 1)];
    std::vector<ScheduleNode> children;
    for (const std::size_t s : share) children.push_back(grow(depth - 1, s));
    return pick(0, 1) == 0 ? ScheduleNode::series(std::move(children))
                           : ScheduleNode::parallel(std::move(children));
  }

  std::mt19937_64 rng_;
  std::size_t maxLeaves_;
  std::size_t maxDepth_;
  std::size_t maxSupport_;
};

}  // namespace kolmo::testing

#endif  // KOLMO_TESTS_RANDOM_TREES_HPP_
