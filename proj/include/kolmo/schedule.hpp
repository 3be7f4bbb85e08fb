#ifndef KOLMO_SCHEDULE_HPP_
#define KOLMO_SCHEDULE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kolmo/distribution.hpp"
#include "kolmo/optimizers.hpp"

namespace kolmo {

/**
 * Series-parallel expression over independent task durations. A series node
 * completes after the sum of its children, a parallel node after their
 * maximum. Inner nodes have at least two children.
 */
class ScheduleNode {
 public:
  enum class Kind { kLeaf, kSeries, kParallel };

  static ScheduleNode leaf(DiscreteDistribution dist);
  /// Throws SchemaError for fewer than two children.
  static ScheduleNode series(std::vector<ScheduleNode> children);
  static ScheduleNode parallel(std::vector<ScheduleNode> children);

  Kind kind() const noexcept { return kind_; }
  /// Only valid for leaves.
  const DiscreteDistribution& distribution() const { return *dist_; }
  const std::vector<ScheduleNode>& children() const noexcept { return children_; }

  std::size_t leafCount() const;
  std::size_t depth() const;

  friend bool operator==(const ScheduleNode&, const ScheduleNode&) = default;

 private:
  ScheduleNode(Kind kind, std::optional<DiscreteDistribution> dist,
               std::vector<ScheduleNode> children);

  Kind kind_;
  std::optional<DiscreteDistribution> dist_;
  std::vector<ScheduleNode> children_;
};

struct TrimRecord {
  /// "root", "root/1/0", ...; a partial fold over the first k+1 children of
  /// a node is written "<path>[0..k]".
  std::string path;
  Probability epsilon;
};

struct ErrorBudget {
  std::vector<TrimRecord> perTrim;
  double total = 0.0;

  void add(std::string path, Probability epsilon);
};

struct Evaluation {
  DiscreteDistribution dist;
  ErrorBudget budget;
};

struct MissInterval {
  Probability lo;
  Probability hi;
};

inline constexpr std::size_t kDefaultSupportCap = std::size_t{1} << 24;

/// Distribution of a + b for independent a, b. Throws SupportOverflow when
/// |a| * |b| exceeds cap.
DiscreteDistribution seriesCombine(const DiscreteDistribution& a,
                                   const DiscreteDistribution& b,
                                   std::size_t cap = kDefaultSupportCap);

/// Distribution of max(a, b) for independent a, b: F = F_a * F_b.
DiscreteDistribution parallelCombine(const DiscreteDistribution& a,
                                     const DiscreteDistribution& b);

/**
 * Bottom-up evaluation. Every leaf and every pairwise combine whose support
 * exceeds trim is replaced by compress(., trim, algorithm), and the error of
 * that step is recorded. Children are folded left to right.
 */
Evaluation evaluate(const ScheduleNode& tree, std::size_t trim, Algorithm algorithm,
                    std::size_t cap = kDefaultSupportCap);

/// Untrimmed evaluation.
DiscreteDistribution evaluateExact(const ScheduleNode& tree,
                                   std::size_t cap = kDefaultSupportCap);

/// [p, min(1, p + total)] with p = 1 - F(deadline) of the evaluated result.
/// The trimmed CDF never lies below the exact one, so the exact miss
/// probability falls inside.
MissInterval missProbability(const Evaluation& result, double deadline);

}  // namespace kolmo

#endif  // KOLMO_SCHEDULE_HPP_
