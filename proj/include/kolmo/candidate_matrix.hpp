#ifndef KOLMO_CANDIDATE_MATRIX_HPP_
#define KOLMO_CANDIDATE_MATRIX_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "kolmo/distribution.hpp"

namespace kolmo {

/**
 * Implicit matrix of candidate errors over a cumulative sequence c_1..c_n.
 * Indices are 1-based:
 *
 *   e(i, j) = 0                 if i + j <= n
 *           = c_i - c_{n+1-j}   if i <= n, j <= n, i + j >= n + 1
 *           = c_i               if i <= n, j == n + 1
 *           = 1                 otherwise
 *
 * Rows and columns are non-decreasing over every index range, including
 * the padding up to the power-of-two dimensions. Entries are computed on
 * demand from the borrowed cum view; nothing is materialised.
 */
class CandidateMatrix {
 public:
  explicit CandidateMatrix(std::span<const double> cum);
  explicit CandidateMatrix(const DiscreteDistribution& dist)
      : CandidateMatrix(dist.cum()) {}

  double entry(std::size_t i, std::size_t j) const noexcept {
    if (i + j <= n_) return 0.0;
    if (i <= n_) {
      if (j <= n_) return cum_[i - 1] - cum_[n_ - j];
      if (j == n_ + 1) return cum_[i - 1];
    }
    return 1.0;
  }

  std::size_t support() const noexcept { return n_; }
  /// 2^ceil(log2 n)
  std::size_t rows() const noexcept { return rows_; }
  /// 2^ceil(log2(n + 1))
  std::size_t cols() const noexcept { return cols_; }

 private:
  std::span<const double> cum_;
  std::size_t n_;
  std::size_t rows_;
  std::size_t cols_;
};

struct MatrixIndex {
  std::size_t row;
  std::size_t col;
  friend auto operator<=>(const MatrixIndex&, const MatrixIndex&) = default;
};

/// Inclusive rectangle of matrix indices.
struct MatrixRegion {
  MatrixIndex topLeft;
  MatrixIndex bottomRight;

  bool isSingleton() const noexcept { return topLeft == bottomRight; }
  std::size_t height() const noexcept { return bottomRight.row - topLeft.row + 1; }
  std::size_t width() const noexcept { return bottomRight.col - topLeft.col + 1; }

  friend auto operator<=>(const MatrixRegion&, const MatrixRegion&) = default;
};

/// Quarters a region at the floor/ceil midpoints. A singleton maps to four
/// copies of itself; a single row or column yields repeated halves.
std::array<MatrixRegion, 4> split(const MatrixRegion& region);

/// Sorted set {0, 1} u {c_j - c_i : i < j} u {c_j}, with values closer than
/// kTolerance to the previous kept value merged into it.
std::vector<double> candidateList(const DiscreteDistribution& dist);

}  // namespace kolmo

#endif  // KOLMO_CANDIDATE_MATRIX_HPP_
