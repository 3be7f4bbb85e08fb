#ifndef KOLMO_COMMANDS_HPP_
#define KOLMO_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kolmo/dual.hpp"
#include "kolmo/error.hpp"
#include "kolmo/optimizers.hpp"

namespace kolmo {

// Process exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitResource = 4;

int exitStatusFor(ErrorCode code);

struct CompressOptions {
  std::string input;
  std::string output;
  std::optional<std::size_t> budget;
  Algorithm algorithm = Algorithm::kLinear;
  std::optional<double> epsilon;
  DualMode mode = DualMode::kStrict;
};

struct DistanceOptions {
  std::string first;
  std::string second;
  bool oneSided = false;
};

struct ScheduleOptions {
  std::string tree;
  std::size_t trim = 0;
  Algorithm algorithm = Algorithm::kLinear;
  double deadline = 0.0;
};

struct BenchOptions {
  std::vector<std::size_t> sizes;
  std::size_t budget = 0;
  std::vector<Algorithm> algorithms;
  std::uint64_t seed = 0;
  /// Mass grid K; 0 means K = n for each size.
  std::uint64_t grid = 0;
  std::string output;
};

struct BenchRecord {
  std::size_t n;
  std::size_t m;
  Algorithm algorithm;
  Probability epsilon;
  std::uint64_t dualCalls;
  std::uint64_t stepCount;
  std::int64_t wallNanos;
  std::uint64_t seed;
  std::uint64_t peakRegions;
};

// The run* functions throw kolmo::Error on bad input; the caller maps the
// code to an exit status. Results go to out, notes to err.
void runCompress(const CompressOptions& options, std::ostream& out);
void runDistance(const DistanceOptions& options, std::ostream& out);
void runSchedule(const ScheduleOptions& options, std::ostream& out);
/// Returns the records in (size, algorithm) order and writes them as CSV to
/// options.output. Cells refused by a size cap are skipped with a note.
std::vector<BenchRecord> runBench(const BenchOptions& options, std::ostream& err);

std::string benchCsv(const std::vector<BenchRecord>& records);

}  // namespace kolmo

#endif  // KOLMO_COMMANDS_HPP_
