#ifndef KOLMO_TESTS_SUPPORT_HPP_
#define KOLMO_TESTS_SUPPORT_HPP_

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "kolmo/distribution.hpp"

namespace kolmo::testing {

// Distribution A: outcomes 1..4 with cumulative 0.3, 0.7, 0.9, 1.0.
inline DiscreteDistribution distributionA() {
  const std::vector<CdfPoint> pairs{{1, 0.3}, {2, 0.7}, {3, 0.9}, {4, 1.0}};
  return DiscreteDistribution::fromCdfPairs(pairs);
}

inline DiscreteDistribution fromCdf(std::vector<CdfPoint> pairs) {
  return DiscreteDistribution::fromCdfPairs(pairs);
}

inline DiscreteDistribution fromPmf(std::vector<Atom> atoms) {
  return DiscreteDistribution::fromPmf(atoms);
}

inline DiscreteDistribution coin() { return fromPmf({{1, 0.5}, {2, 0.5}}); }

inline ::testing::AssertionResult sameDistribution(const DiscreteDistribution& a,
                                                   const DiscreteDistribution& b,
                                                   double tol = 1e-12) {
  if (a.size() != b.size()) {
    return ::testing::AssertionFailure()
           << "support sizes differ: " << a.size() << " vs " << b.size();
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.values()[i] != b.values()[i] || std::abs(a.cum()[i] - b.cum()[i]) > tol) {
      return ::testing::AssertionFailure()
             << "point " << i << ": (" << a.values()[i] << ", " << a.cum()[i] << ") vs ("
             << b.values()[i] << ", " << b.cum()[i] << ")";
    }
  }
  return ::testing::AssertionSuccess();
}

// Cumulative sequence of integer masses, exactly as the library computes it.
inline DiscreteDistribution fromIntegerMasses(const std::vector<int>& masses) {
  double total = 0;
  for (int m : masses) total += m;
  std::vector<double> values;
  std::vector<double> cum;
  double acc = 0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    acc += masses[i];
    values.push_back(static_cast<double>(i + 1));
    cum.push_back(acc / total);
  }
  return DiscreteDistribution::fromStepCdf(values, cum);
}

}  // namespace kolmo::testing

#endif  // KOLMO_TESTS_SUPPORT_HPP_
