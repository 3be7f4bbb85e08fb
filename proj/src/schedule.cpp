#include "kolmo/schedule.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <utility>

#include "kolmo/error.hpp"

namespace kolmo {

ScheduleNode::ScheduleNode(Kind kind, std::optional<DiscreteDistribution> dist,
                           std::vector<ScheduleNode> children)
    : kind_(kind), dist_(std::move(dist)), children_(std::move(children)) {
  if (kind_ != Kind::kLeaf && children_.size() < 2) {
    std::ostringstream out;
    out << (kind_ == Kind::kSeries ? "series" : "parallel")
        << " node needs at least 2 children, got " << children_.size();
    throw Error(ErrorCode::kSchemaError, out.str());
  }
}

ScheduleNode ScheduleNode::leaf(DiscreteDistribution dist) {
  return ScheduleNode(Kind::kLeaf, std::move(dist), {});
}

ScheduleNode ScheduleNode::series(std::vector<ScheduleNode> children) {
  return ScheduleNode(Kind::kSeries, std::nullopt, std::move(children));
}

ScheduleNode ScheduleNode::parallel(std::vector<ScheduleNode> children) {
  return ScheduleNode(Kind::kParallel, std::nullopt, std::move(children));
}

std::size_t ScheduleNode::leafCount() const {
  if (kind_ == Kind::kLeaf) return 1;
  std::size_t total = 0;
  for (const ScheduleNode& child : children_) total += child.leafCount();
  return total;
}

std::size_t ScheduleNode::depth() const {
  std::size_t deepest = 0;
  for (const ScheduleNode& child : children_) deepest = std::max(deepest, child.depth());
  return deepest + 1;
}

void ErrorBudget::add(std::string path, Probability epsilon) {
  perTrim.push_back({std::move(path), epsilon});
  total += epsilon;
}

DiscreteDistribution seriesCombine(const DiscreteDistribution& a,
                                   const DiscreteDistribution& b, std::size_t cap) {
  if (a.size() > cap / b.size()) {
    std::ostringstream out;
    out << "sum of supports " << a.size() << " x " << b.size()
        << " exceeds the cap " << cap;
    throw Error(ErrorCode::kSupportOverflow, out.str());
  }
  std::vector<Atom> atoms;
  atoms.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      atoms.push_back({a.values()[i] + b.values()[j], a.massAt(i) * b.massAt(j)});
    }
  }
  return DiscreteDistribution::fromPmf(atoms);
}

DiscreteDistribution parallelCombine(const DiscreteDistribution& a,
                                     const DiscreteDistribution& b) {
  const auto av = a.values();
  const auto bv = b.values();
  std::vector<double> values;
  std::vector<double> cum;
  values.reserve(av.size() + bv.size());
  cum.reserve(av.size() + bv.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double fa = 0.0;
  double fb = 0.0;
  while (i < av.size() || j < bv.size()) {
    const double t = j == bv.size() || (i < av.size() && av[i] <= bv[j]) ? av[i] : bv[j];
    if (i < av.size() && av[i] == t) fa = a.cum()[i++];
    if (j < bv.size() && bv[j] == t) fb = b.cum()[j++];
    values.push_back(t);
    cum.push_back(fa * fb);
  }
  return DiscreteDistribution::fromStepCdf(std::move(values), std::move(cum));
}

namespace {

class Evaluator {
 public:
  Evaluator(std::size_t trim, Algorithm algorithm, std::size_t cap)
      : trim_(trim), algorithm_(algorithm), cap_(cap) {}

  DiscreteDistribution run(const ScheduleNode& node, const std::string& path) {
    if (node.kind() == ScheduleNode::Kind::kLeaf) {
      return trimmed(node.distribution(), path);
    }
    const auto& children = node.children();
    DiscreteDistribution acc = run(children[0], path + "/0");
    for (std::size_t k = 1; k < children.size(); ++k) {
      const DiscreteDistribution next = run(children[k], path + "/" + std::to_string(k));
      DiscreteDistribution combined = node.kind() == ScheduleNode::Kind::kSeries
                                          ? seriesCombine(acc, next, cap_)
                                          : parallelCombine(acc, next);
      const std::string label =
          k + 1 == children.size() ? path : path + "[0.." + std::to_string(k) + "]";
      acc = trimmed(combined, label);
    }
    return acc;
  }

  ErrorBudget budget;

 private:
  DiscreteDistribution trimmed(const DiscreteDistribution& dist, const std::string& path) {
    if (dist.size() <= trim_) return dist;
    Approximation approx = compress(dist, trim_, algorithm_);
    budget.add(path, approx.achievedEpsilon);
    return std::move(approx.dist);
  }

  std::size_t trim_;
  Algorithm algorithm_;
  std::size_t cap_;
};

}  // namespace

Evaluation evaluate(const ScheduleNode& tree, std::size_t trim, Algorithm algorithm,
                    std::size_t cap) {
  if (trim < 1) {
    throw Error(ErrorCode::kInvalidBudget, "trim budget must be at least 1");
  }
  Evaluator evaluator(trim, algorithm, cap);
  DiscreteDistribution dist = evaluator.run(tree, "root");
  return Evaluation{std::move(dist), std::move(evaluator.budget)};
}

DiscreteDistribution evaluateExact(const ScheduleNode& tree, std::size_t cap) {
  return evaluate(tree, std::numeric_limits<std::size_t>::max(), Algorithm::kLinear, cap)
      .dist;
}

MissInterval missProbability(const Evaluation& result, double deadline) {
  const double p = 1.0 - result.dist.cdfAt(deadline);
  return {std::max(0.0, p), std::min(1.0, p + result.budget.total)};
}

}  // namespace kolmo
