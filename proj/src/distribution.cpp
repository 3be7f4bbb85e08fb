#include "kolmo/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "kolmo/error.hpp"

namespace kolmo {

namespace {

std::string describePoint(std::size_t index, double value) {
  std::ostringstream out;
  out << "entry " << index << " (outcome " << value << ")";
  return out.str();
}

// Walks the union support of a and b in increasing order and calls
// visit(F_a(t), F_b(t)) once at every support point t.
template <typename Visit>
void mergeWalk(const DiscreteDistribution& a, const DiscreteDistribution& b,
               Visit&& visit) {
  const auto av = a.values();
  const auto bv = b.values();
  const auto ac = a.cum();
  const auto bc = b.cum();
  std::size_t i = 0;
  std::size_t j = 0;
  double fa = 0.0;
  double fb = 0.0;
  while (i < av.size() || j < bv.size()) {
    double t;
    if (j == bv.size() || (i < av.size() && av[i] <= bv[j])) {
      t = av[i];
    } else {
      t = bv[j];
    }
    if (i < av.size() && av[i] == t) fa = ac[i++];
    if (j < bv.size() && bv[j] == t) fb = bc[j++];
    visit(fa, fb);
  }
}

}  // namespace

DiscreteDistribution DiscreteDistribution::fromPmf(std::span<const Atom> pmf) {
  if (pmf.empty()) {
    throw Error(ErrorCode::kEmptyInput, "distribution needs at least one outcome");
  }
  std::vector<Atom> atoms(pmf.begin(), pmf.end());
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (!std::isfinite(atoms[k].value) || !std::isfinite(atoms[k].mass)) {
      throw Error(ErrorCode::kNonFinite, describePoint(k, atoms[k].value) +
                                             " is not a finite number");
    }
    if (atoms[k].mass < 0.0) {
      throw Error(ErrorCode::kNegativeMass,
                  describePoint(k, atoms[k].value) + " has negative mass");
    }
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& l, const Atom& r) { return l.value < r.value; });

  std::vector<double> values;
  std::vector<double> cum;
  values.reserve(atoms.size());
  cum.reserve(atoms.size());
  double total = 0.0;
  for (const Atom& atom : atoms) {
    total += atom.mass;
    if (!values.empty() && values.back() == atom.value) {
      cum.back() = total;
    } else {
      values.push_back(atom.value);
      cum.push_back(total);
    }
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    std::ostringstream out;
    out << "masses sum to " << total << ", expected 1";
    throw Error(ErrorCode::kNotNormalized, out.str());
  }
  return fromStepCdf(std::move(values), std::move(cum));
}

DiscreteDistribution DiscreteDistribution::fromCdfPairs(
    std::span<const CdfPoint> cdf) {
  if (cdf.empty()) {
    throw Error(ErrorCode::kEmptyInput, "distribution needs at least one outcome");
  }
  std::vector<double> values;
  std::vector<double> cum;
  values.reserve(cdf.size());
  cum.reserve(cdf.size());
  for (std::size_t k = 0; k < cdf.size(); ++k) {
    const CdfPoint& p = cdf[k];
    if (!std::isfinite(p.value) || !std::isfinite(p.cum)) {
      throw Error(ErrorCode::kNonFinite,
                  describePoint(k, p.value) + " is not a finite number");
    }
    if (k > 0 && !(p.value > cdf[k - 1].value)) {
      throw Error(ErrorCode::kNonMonotone,
                  describePoint(k, p.value) + ": outcomes must strictly increase");
    }
    const double previous = k > 0 ? cdf[k - 1].cum : 0.0;
    if (!(p.cum > previous)) {
      throw Error(ErrorCode::kNonMonotone,
                  describePoint(k, p.value) +
                      ": cumulative probabilities must strictly increase from 0");
    }
    if (p.cum > 1.0 + kNormTolerance) {
      throw Error(ErrorCode::kNotNormalized,
                  describePoint(k, p.value) + ": cumulative probability above 1");
    }
    values.push_back(p.value);
    cum.push_back(p.cum);
  }
  if (std::abs(cum.back() - 1.0) > kNormTolerance) {
    std::ostringstream out;
    out << "last cumulative probability is " << cum.back() << ", expected 1";
    throw Error(ErrorCode::kNotNormalized, out.str());
  }
  cum.back() = 1.0;
  if (cum.size() > 1 && cum[cum.size() - 2] >= 1.0) {
    throw Error(ErrorCode::kNonMonotone,
                describePoint(cum.size() - 2, values[values.size() - 2]) +
                    " already reaches probability 1");
  }
  return DiscreteDistribution(std::move(values), std::move(cum));
}

DiscreteDistribution DiscreteDistribution::fromStepCdf(std::vector<double> values,
                                                       std::vector<double> cum) {
  if (values.empty() || values.size() != cum.size()) {
    throw Error(ErrorCode::kEmptyInput, "step CDF needs matching, nonempty sequences");
  }
  if (std::abs(cum.back() - 1.0) > kNormTolerance) {
    std::ostringstream out;
    out << "last cumulative probability is " << cum.back() << ", expected 1";
    throw Error(ErrorCode::kNotNormalized, out.str());
  }
  const std::size_t n = values.size();
  std::size_t kept = 0;
  double previous = 0.0;
  double previousRaw = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0 && !(values[k] > values[k - 1])) {
      throw Error(ErrorCode::kNonMonotone,
                  describePoint(k, values[k]) + ": outcomes must strictly increase");
    }
    if (!std::isfinite(values[k]) || !std::isfinite(cum[k])) {
      throw Error(ErrorCode::kNonFinite,
                  describePoint(k, values[k]) + " is not a finite number");
    }
    if (cum[k] < previousRaw) {
      throw Error(ErrorCode::kNonMonotone,
                  describePoint(k, values[k]) + ": cumulative probability decreases");
    }
    previousRaw = cum[k];
    const double c = k + 1 == n ? 1.0 : std::min(cum[k], 1.0);
    if (c > previous) {
      values[kept] = values[k];
      cum[kept] = c;
      previous = c;
      ++kept;
    }
  }
  values.resize(kept);
  cum.resize(kept);
  return DiscreteDistribution(std::move(values), std::move(cum));
}

DiscreteDistribution DiscreteDistribution::pointMass(double value) {
  const CdfPoint point{value, 1.0};
  return fromCdfPairs(std::span(&point, 1));
}

std::vector<Atom> DiscreteDistribution::pmf() const {
  std::vector<Atom> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back({values_[i], massAt(i)});
  return out;
}

std::vector<CdfPoint> DiscreteDistribution::cdfPairs() const {
  std::vector<CdfPoint> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back({values_[i], cum_[i]});
  return out;
}

Probability DiscreteDistribution::cdfAt(double t) const noexcept {
  const auto it = std::upper_bound(values_.begin(), values_.end(), t);
  if (it == values_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

Probability kolmogorovDistance(const DiscreteDistribution& a,
                               const DiscreteDistribution& b) {
  double best = 0.0;
  mergeWalk(a, b, [&](double fa, double fb) { best = std::max(best, std::abs(fa - fb)); });
  return best;
}

double oneSidedExcess(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  double best = std::numeric_limits<double>::lowest();
  mergeWalk(a, b, [&](double fa, double fb) { best = std::max(best, fb - fa); });
  return best;
}

}  // namespace kolmo
