#ifndef KOLMO_DISTRIBUTION_HPP_
#define KOLMO_DISTRIBUTION_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace kolmo {

// Probabilities and Kolmogorov distances are plain doubles in [0, 1].
using Probability = double;

// Comparison tolerance for differences of stored cumulative values.
inline constexpr double kTolerance = 1e-12;
// Allowed deviation of the total mass from 1 on input.
inline constexpr double kNormTolerance = 1e-6;

struct Atom {
  double value;
  double mass;
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct CdfPoint {
  double value;
  Probability cum;
  friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

/**
 * A finite discrete random variable in canonical form.
 *
 * The support x_1 < ... < x_n is stored together with the cumulative
 * probabilities c_i = Pr(X <= x_i). Every support point carries positive
 * mass, so c is strictly increasing, and c_n == 1 exactly. Instances are
 * immutable once built.
 */
class DiscreteDistribution {
 public:
  /// Builds from (outcome, mass) pairs. Ties are merged, zero masses dropped.
  static DiscreteDistribution fromPmf(std::span<const Atom> pmf);

  /// Builds from (outcome, Pr(X <= outcome)) pairs, both strictly increasing.
  static DiscreteDistribution fromCdfPairs(std::span<const CdfPoint> cdf);

  /**
   * Builds from a step CDF whose values are strictly increasing and whose
   * cumulative sequence is non-decreasing. Flat steps (zero mass) are
   * dropped and the last cumulative value is forced to 1. This is the
   * lenient path used by the combinators and the compressors; it still
   * rejects decreasing input.
   */
  static DiscreteDistribution fromStepCdf(std::vector<double> values,
                                          std::vector<double> cum);

  static DiscreteDistribution pointMass(double value);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> cum() const noexcept { return cum_; }

  double minValue() const noexcept { return values_.front(); }
  double maxValue() const noexcept { return values_.back(); }

  double massAt(std::size_t i) const noexcept {
    return i == 0 ? cum_[0] : cum_[i] - cum_[i - 1];
  }

  std::vector<Atom> pmf() const;
  std::vector<CdfPoint> cdfPairs() const;

  /// Right-continuous CDF: largest c_i with x_i <= t, or 0 below the support.
  Probability cdfAt(double t) const noexcept;

  friend bool operator==(const DiscreteDistribution&,
                         const DiscreteDistribution&) = default;

 private:
  DiscreteDistribution(std::vector<double> values, std::vector<double> cum)
      : values_(std::move(values)), cum_(std::move(cum)) {}

  std::vector<double> values_;
  std::vector<double> cum_;
};

/// sup_t |F_a(t) - F_b(t)|, by one merge-walk over the union of supports.
Probability kolmogorovDistance(const DiscreteDistribution& a,
                               const DiscreteDistribution& b);

/**
 * Signed excess sup_t (F_b(t) - F_a(t)), taken over the union support.
 * F_b >= F_a everywhere iff oneSidedExcess(b, a) <= 0.
 */
double oneSidedExcess(const DiscreteDistribution& a,
                      const DiscreteDistribution& b);

}  // namespace kolmo

#endif  // KOLMO_DISTRIBUTION_HPP_
