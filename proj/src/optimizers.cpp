#include "kolmo/optimizers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include "kolmo/candidate_matrix.hpp"
#include "kolmo/error.hpp"

namespace kolmo {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

void requireBudget(std::size_t budget) {
  if (budget < 1) {
    throw Error(ErrorCode::kInvalidBudget,
                "budget m must be at least 1: a CDF needs one jump to reach 1");
  }
}

Approximation unchanged(const DiscreteDistribution& dist) {
  return Approximation{.dist = dist};
}

Approximation finish(const DiscreteDistribution& dist, double epsilon,
                     std::uint64_t searchCalls, std::uint64_t steps,
                     std::uint64_t peakRegions = 0) {
  Approximation result = dualApprox(dist, epsilon, DualMode::kStrict);
  result.dualCalls = searchCalls + 1;
  result.stepCount = steps;
  result.peakRegions = peakRegions;
  return result;
}

// The padded matrix cut into equal blocks of height x width. Block (r, c)
// is 0-based and covers rows r*height+1 .. (r+1)*height.
class BlockGrid {
 public:
  BlockGrid(const CandidateMatrix& matrix, std::size_t height, std::size_t width)
      : matrix_(&matrix), height_(height), width_(width) {}

  std::size_t blockRows() const { return matrix_->rows() / height_; }
  std::size_t blockCols() const { return matrix_->cols() / width_; }
  bool singletons() const { return height_ == 1 && width_ == 1; }

  double topLeft(std::size_t r, std::size_t c) const {
    return matrix_->entry(r * height_ + 1, c * width_ + 1);
  }
  double bottomRight(std::size_t r, std::size_t c) const {
    return matrix_->entry((r + 1) * height_, (c + 1) * width_);
  }

  BlockGrid quartered() const {
    return BlockGrid(*matrix_, std::max<std::size_t>(1, height_ / 2),
                     std::max<std::size_t>(1, width_ / 2));
  }

 private:
  const CandidateMatrix* matrix_;
  std::size_t height_;
  std::size_t width_;
};

enum class Corner { kTopLeft, kBottomRight };

// Open band (infeasible, feasible): every value <= infeasible fails the
// budget, every value >= feasible meets it.
struct Bounds {
  double infeasible = -kInfinity;
  double feasible = kInfinity;

  bool decides(double e) const { return e <= infeasible || e >= feasible; }
};

// Fixed working buffers of the selection routine; they bound the memory of
// linApprox independently of n.
constexpr std::size_t kSampleSize = 4096;
// Probe offset in sample ranks, about three standard deviations of the
// sample quantile.
constexpr std::size_t kSampleGap = 96;
constexpr std::size_t kCollectLimit = std::size_t{1} << 16;
// Once only single cells are live and at most this many remain, they are
// copied out and the remaining rounds run on the copy.
constexpr std::size_t kExplicitLimit = std::size_t{1} << 18;

// Live blocks whose corner entry lies in (lower, upper].
struct Filter {
  Corner corner;
  double lower;
  double upper;
};

// A filter that matches nothing and costs O(1) per block row.
constexpr Filter kNoBlocks{Corner::kTopLeft, kInfinity, kInfinity};

/**
 * rank-th smallest (1-based) corner entry over the live blocks. The answer
 * is kept inside a bracket (lo, hi] with exact counts at both ends. Each step
 * samples the bracket, then counts two sample values around the expected
 * rank while copying out the entries between them. Usually the answer is
 * among those; otherwise the bracket shrinks and the step repeats.
 */
struct Selection {
  Selection(Corner c, std::uint64_t r, std::uint64_t total)
      : corner(c), rank(r), atMostHi(total) {
    buffer.reserve(std::max(kSampleSize, kCollectLimit));
  }

  std::uint64_t inside() const { return atMostHi - atMostLo; }
  bool collecting() const { return inside() <= kCollectLimit; }
  Filter filter() const { return done ? kNoBlocks : Filter{corner, lo, hi}; }

  Corner corner;
  std::uint64_t rank;
  double lo = -kInfinity;
  std::uint64_t atMostLo = 0;
  double hi = kInfinity;
  std::uint64_t atMostHi;
  bool done = false;
  double result = 0.0;
  std::vector<double> buffer;
};

// The regions of one depth that may still hold a value inside the band.
class LiveBlocks {
 public:
  LiveBlocks(const BlockGrid& grid, const Bounds& bounds)
      : grid_(grid), bounds_(bounds) {}

  std::uint64_t count() const {
    std::uint64_t total = 0;
    sweep(std::array{Filter{Corner::kTopLeft, -kInfinity, kInfinity}},
          [&](std::size_t, std::size_t, std::size_t first, std::size_t end) {
            total += end - first;
          });
    return total;
  }

  /// Lower medians of the top-left and of the bottom-right corner entries,
  /// with total = count(). Both selections share their passes; on single
  /// cells the two corners coincide and only one is run.
  std::array<double, 2> lowerMedians(std::uint64_t total) const {
    const std::uint64_t rank = (total + 1) / 2;
    std::array<Selection, 2> pending{Selection(Corner::kTopLeft, rank, total),
                                     Selection(Corner::kBottomRight, rank, total)};
    pending[1].done = grid_.singletons();
    while (!pending[0].done || !pending[1].done) narrow(pending);
    if (grid_.singletons()) pending[1].result = pending[0].result;
    return {pending[0].result, pending[1].result};
  }

  // Calls visit(r, first, end) for each block row whose live blocks with
  // corner entry in (lower, upper] form the non-empty column run
  // [first, end).
  template <typename Visit>
  void forEachRun(Corner corner, double lower, double upper, Visit&& visit) const {
    sweep(std::array{Filter{corner, lower, upper}},
          [&](std::size_t, std::size_t r, std::size_t first, std::size_t end) {
            visit(r, first, end);
          });
  }

 private:
  double value(Corner corner, std::size_t r, std::size_t c) const {
    return corner == Corner::kTopLeft ? grid_.topLeft(r, c) : grid_.bottomRight(r, c);
  }

  // One pass over all block rows; calls visit(k, r, first, end) with the
  // run of live blocks in row r that pass filters[k]. Per row: below = #cols
  // with top-left < feasible, dead = #cols with bottom-right <= infeasible,
  // skip/within = #cols with corner <= lower/upper. All are prefix lengths
  // that can only shrink as r grows.
  template <std::size_t K, typename Visit>
  void sweep(const std::array<Filter, K>& filters, Visit&& visit) const {
    const std::size_t rows = grid_.blockRows();
    const std::size_t cols = grid_.blockCols();
    std::size_t below = cols;
    std::size_t dead = cols;
    std::array<std::size_t, K> skip;
    std::array<std::size_t, K> within;
    for (std::size_t k = 0; k < K; ++k) {
      skip[k] = filters[k].lower == -kInfinity ? 0 : cols;
      within[k] = cols;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      while (below > 0 && grid_.topLeft(r, below - 1) >= bounds_.feasible) --below;
      if (below == 0) break;
      while (dead > 0 && grid_.bottomRight(r, dead - 1) > bounds_.infeasible) --dead;
      // The filter pointers may lag on rows with nothing live; being
      // monotone, they catch up on the next row that needs them.
      if (dead >= below) continue;
      for (std::size_t k = 0; k < K; ++k) {
        const Filter& f = filters[k];
        while (skip[k] > 0 && value(f.corner, r, skip[k] - 1) > f.lower) --skip[k];
        if (f.upper != kInfinity) {
          while (within[k] > 0 && value(f.corner, r, within[k] - 1) > f.upper) --within[k];
        }
        const std::size_t first = std::max(dead, skip[k]);
        const std::size_t end = std::min(below, within[k]);
        if (end > first) visit(k, r, first, end);
      }
    }
  }

  // Advances every unfinished selection by one step: a bracket that fits
  // the buffer is copied out and finished, any other is sampled and then
  // probed in one pass shared by both selections.
  void narrow(std::array<Selection, 2>& pending) const {
    std::array<std::uint64_t, 2> seen{0, 0};
    std::array<std::size_t, 2> taken{0, 0};
    std::array<std::uint64_t, 2> next{0, 0};
    // One position drawn from each of kSampleSize equal strata (row-major
    // order) of the entries in (lo, hi]. Evenly spaced positions follow the
    // matrix structure too closely and skew the sample.
    const auto draw = [&](std::size_t k) {
      const Selection& s = pending[k];
      next[k] = (taken[k] * s.inside() + rng_() % s.inside()) / kSampleSize;
    };
    for (std::size_t k = 0; k < 2; ++k) {
      pending[k].buffer.clear();
      if (!pending[k].done && !pending[k].collecting()) draw(k);
    }
    sweep(std::array{pending[0].filter(), pending[1].filter()},
          [&](std::size_t k, std::size_t r, std::size_t first, std::size_t end) {
            Selection& s = pending[k];
            if (s.collecting()) {
              for (std::size_t c = first; c < end; ++c) s.buffer.push_back(value(s.corner, r, c));
              return;
            }
            const std::uint64_t length = end - first;
            while (taken[k] < kSampleSize && next[k] < seen[k] + length) {
              s.buffer.push_back(value(s.corner, r, first + (next[k] - seen[k])));
              ++taken[k];
              if (taken[k] < kSampleSize) draw(k);
            }
            seen[k] += length;
          });

    // Per selection: the two probe counts and the band between the probes,
    // which is copied out in the same pass in case the answer lands there.
    std::array<Filter, 6> probes;
    probes.fill(kNoBlocks);
    bool sampled = false;
    for (std::size_t k = 0; k < 2; ++k) {
      Selection& s = pending[k];
      if (s.done) continue;
      const std::uint64_t target = s.rank - s.atMostLo;
      if (s.collecting()) {
        std::nth_element(s.buffer.begin(), s.buffer.begin() + (target - 1), s.buffer.end());
        s.result = s.buffer[target - 1];
        s.done = true;
        continue;
      }
      std::sort(s.buffer.begin(), s.buffer.end());
      const std::uint64_t expected = (target * kSampleSize) / s.inside();
      const double below = expected >= kSampleGap ? s.buffer[expected - kSampleGap] : s.lo;
      const double above =
          expected + kSampleGap < s.buffer.size() ? s.buffer[expected + kSampleGap] : s.hi;
      probes[3 * k] = {s.corner, -kInfinity, below};
      probes[3 * k + 1] = {s.corner, -kInfinity, above};
      probes[3 * k + 2] = {s.corner, below, above};
      s.buffer.clear();
      sampled = true;
    }
    if (!sampled) return;

    std::array<std::uint64_t, 6> counts{};
    std::array<bool, 2> overflow{false, false};
    sweep(probes, [&](std::size_t p, std::size_t r, std::size_t first, std::size_t end) {
      counts[p] += end - first;
      if (p % 3 != 2 || overflow[p / 3]) return;
      Selection& s = pending[p / 3];
      if (s.buffer.size() + (end - first) > kCollectLimit) {
        overflow[p / 3] = true;
        return;
      }
      for (std::size_t c = first; c < end; ++c) s.buffer.push_back(value(s.corner, r, c));
    });
    for (std::size_t k = 0; k < 2; ++k) {
      Selection& s = pending[k];
      if (s.done) continue;
      const std::uint64_t inside = s.inside();
      for (std::size_t p = 3 * k; p < 3 * k + 2; ++p) {
        const double probe = probes[p].upper;
        if (!(probe > s.lo && probe < s.hi)) continue;
        if (counts[p] >= s.rank) {
          s.hi = probe;
          s.atMostHi = counts[p];
        } else {
          s.lo = probe;
          s.atMostLo = counts[p];
        }
      }
      const Filter& band = probes[3 * k + 2];
      if (!overflow[k] && s.lo == band.lower && s.hi == band.upper) {
        const std::uint64_t target = s.rank - s.atMostLo;
        std::nth_element(s.buffer.begin(), s.buffer.begin() + (target - 1), s.buffer.end());
        s.result = s.buffer[target - 1];
        s.done = true;
      } else if (s.inside() == inside) {
        settleStall(s);
      }
    }
  }

  // The bracket did not move because the samples are all copies of hi:
  // either hi is the answer or every copy lies above it.
  void settleStall(Selection& s) const {
    const double under = std::nextafter(s.hi, -kInfinity);
    std::uint64_t atMostUnder = 0;
    sweep(std::array{Filter{s.corner, -kInfinity, under}},
          [&](std::size_t, std::size_t, std::size_t first, std::size_t end) {
            atMostUnder += end - first;
          });
    if (atMostUnder < s.rank) {
      s.result = s.hi;
      s.done = true;
      return;
    }
    s.hi = under;
    s.atMostHi = atMostUnder;
  }

  const BlockGrid& grid_;
  const Bounds& bounds_;
  // Only steers the sample; the selected values do not depend on it.
  mutable std::mt19937_64 rng_{0x9e3779b97f4a7c15};
};

}  // namespace

Approximation binsApprox(const DiscreteDistribution& dist, std::size_t budget,
                         std::size_t max_support) {
  requireBudget(budget);
  if (budget >= dist.size()) return unchanged(dist);
  if (dist.size() > max_support) {
    std::ostringstream out;
    out << "binary search needs O(n^2) memory; support " << dist.size()
        << " exceeds the cap " << max_support;
    throw Error(ErrorCode::kInputTooLarge, out.str());
  }
  const std::vector<double> candidates = candidateList(dist);
  // The last candidate is 1, which always fits in a single group.
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  std::uint64_t calls = 0;
  std::uint64_t steps = 0;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    ++calls;
    ++steps;
    if (supportFits(dist, candidates[mid], budget)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return finish(dist, candidates[hi], calls, steps);
}

Approximation sdlbkApprox(const DiscreteDistribution& dist, std::size_t budget) {
  requireBudget(budget);
  if (budget >= dist.size()) return unchanged(dist);
  const CandidateMatrix matrix(dist);
  const std::size_t n = dist.size();
  std::size_t i = 1;
  std::size_t j = n + 1;
  double best = kInfinity;
  std::uint64_t calls = 0;
  std::uint64_t steps = 0;
  while (i <= n && j >= 1) {
    ++steps;
    const double e = matrix.entry(i, j);
    ++calls;
    if (supportFits(dist, e, budget)) {
      best = std::min(best, e);
      --j;
    } else {
      ++i;
    }
  }
  return finish(dist, best, calls, steps);
}

Approximation linApprox(const DiscreteDistribution& dist, std::size_t budget) {
  requireBudget(budget);
  if (budget >= dist.size()) return unchanged(dist);
  const CandidateMatrix matrix(dist);
  Bounds bounds;
  BlockGrid grid(matrix, matrix.rows(), matrix.cols());

  std::uint64_t calls = 0;
  std::uint64_t rounds = 0;
  std::uint64_t peak = 1;
  const auto test = [&](double e) {
    if (bounds.decides(e)) return;
    ++calls;
    if (supportFits(dist, e, budget)) {
      bounds.feasible = e;
    } else {
      bounds.infeasible = e;
    }
  };

  std::uint64_t live = 1;
  while (live > 0) {
    if (grid.singletons() && live <= kExplicitLimit) break;
    const bool wasSingletons = grid.singletons();
    const std::uint64_t before = live;
    grid = grid.quartered();
    const LiveBlocks blocks(grid, bounds);
    // Quartering single cells changes nothing, so the last count still holds.
    const std::uint64_t size = wasSingletons ? live : blocks.count();
    peak = std::max(peak, size);
    if (size == 0 || (grid.singletons() && size <= kExplicitLimit)) {
      live = size;
      break;
    }
    ++rounds;
    const auto [low, high] = blocks.lowerMedians(size);
    test(low);
    test(high);
    // Above the cell level the next quartering recounts anyway.
    live = grid.singletons() ? blocks.count() : size;
    if (wasSingletons && live == before) break;
  }

  if (live > 0 && grid.singletons()) {
    // Single cells: top-left and bottom-right coincide, so both pivots are
    // the median of the cell values and the second test is always decided.
    std::vector<double> cells;
    cells.reserve(live);
    LiveBlocks(grid, bounds)
        .forEachRun(Corner::kTopLeft, -kInfinity, kInfinity,
                    [&](std::size_t r, std::size_t first, std::size_t end) {
                      for (std::size_t c = first; c < end; ++c) {
                        cells.push_back(grid.topLeft(r, c));
                      }
                    });
    while (!cells.empty()) {
      const std::size_t before = cells.size();
      ++rounds;
      const auto mid = cells.begin() + static_cast<std::ptrdiff_t>((before - 1) / 2);
      std::nth_element(cells.begin(), mid, cells.end());
      test(*mid);
      std::erase_if(cells, [&](double e) { return bounds.decides(e); });
      if (cells.size() == before) break;
    }
    // Whatever is left lies strictly inside the band; settle it directly.
    for (const double e : cells) test(e);
  }

  const double epsilon = bounds.feasible == kInfinity ? 1.0 : bounds.feasible;
  return finish(dist, epsilon, calls, rounds, peak);
}

std::string_view algorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kBinsearch: return "binsearch";
    case Algorithm::kSaddleback: return "saddleback";
    case Algorithm::kLinear: return "linear";
    case Algorithm::kOracle: return "oracle";
  }
  return "unknown";
}

std::optional<Algorithm> parseAlgorithm(std::string_view name) {
  for (const Algorithm a : {Algorithm::kBinsearch, Algorithm::kSaddleback,
                            Algorithm::kLinear, Algorithm::kOracle}) {
    if (algorithmName(a) == name) return a;
  }
  return std::nullopt;
}

Approximation compress(const DiscreteDistribution& dist, std::size_t budget,
                       Algorithm algorithm) {
  requireBudget(budget);
  if (budget >= dist.size()) return unchanged(dist);
  switch (algorithm) {
    case Algorithm::kBinsearch: return binsApprox(dist, budget);
    case Algorithm::kSaddleback: return sdlbkApprox(dist, budget);
    case Algorithm::kLinear: return linApprox(dist, budget);
    case Algorithm::kOracle: return oracleOptimal(dist, budget);
  }
  throw Error(ErrorCode::kInvalidParams, "unknown algorithm");
}

}  // namespace kolmo
