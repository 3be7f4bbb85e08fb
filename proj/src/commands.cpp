#include "kolmo/commands.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "kolmo/io.hpp"
#include "kolmo/schedule.hpp"

namespace kolmo {

namespace {

std::string formatProbability(double p) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", p);
  return buffer;
}

}  // namespace

int exitStatusFor(ErrorCode code) {
  if (isResourceLimit(code)) return kExitResource;
  if (code == ErrorCode::kInvalidParams) return kExitUsage;
  return kExitData;
}

void runCompress(const CompressOptions& options, std::ostream& out) {
  const DiscreteDistribution input = parseDistributionCsv(readFile(options.input));
  Approximation result = [&] {
    if (options.epsilon) return dualApprox(input, *options.epsilon, options.mode);
    if (!options.budget) {
      throw Error(ErrorCode::kInvalidParams, "either --m or --epsilon is required");
    }
    return compress(input, *options.budget, options.algorithm);
  }();
  writeFile(options.output, writeDistributionCsv(result.dist));
  out << "epsilon=" << formatProbability(result.achievedEpsilon) << "\n"
      << "support=" << result.dist.size() << "\n"
      << "dual_calls=" << result.dualCalls << "\n";
}

void runDistance(const DistanceOptions& options, std::ostream& out) {
  const DiscreteDistribution a = parseDistributionCsv(readFile(options.first));
  const DiscreteDistribution b = parseDistributionCsv(readFile(options.second));
  const double d = options.oneSided ? oneSidedExcess(a, b) : kolmogorovDistance(a, b);
  out << formatProbability(d) << "\n";
}

void runSchedule(const ScheduleOptions& options, std::ostream& out) {
  const ScheduleNode tree = parseScheduleJson(readFile(options.tree));
  const Evaluation result = evaluate(tree, options.trim, options.algorithm);
  const MissInterval miss = missProbability(result, options.deadline);
  out << "miss_probability=[" << formatProbability(miss.lo) << ", "
      << formatProbability(miss.hi) << "]\n"
      << "budget_total=" << formatProbability(result.budget.total) << "\n";
  for (const TrimRecord& trim : result.budget.perTrim) {
    out << "trim " << trim.path << " " << formatProbability(trim.epsilon) << "\n";
  }
}

std::vector<BenchRecord> runBench(const BenchOptions& options, std::ostream& err) {
  if (options.budget < 1) {
    throw Error(ErrorCode::kInvalidBudget, "budget m must be at least 1");
  }
  std::vector<BenchRecord> records;
  for (const std::size_t n : options.sizes) {
    const std::uint64_t grid = options.grid == 0 ? n : options.grid;
    const DiscreteDistribution instance = generateRandomInstance(n, options.seed, grid);
    for (const Algorithm algorithm : options.algorithms) {
      try {
        const auto start = std::chrono::steady_clock::now();
        const Approximation result = compress(instance, options.budget, algorithm);
        const auto stop = std::chrono::steady_clock::now();
        records.push_back({
            .n = n,
            .m = options.budget,
            .algorithm = algorithm,
            .epsilon = result.achievedEpsilon,
            .dualCalls = result.dualCalls,
            .stepCount = result.stepCount,
            .wallNanos =
                std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count(),
            .seed = options.seed,
            .peakRegions = result.peakRegions,
        });
      } catch (const Error& e) {
        if (!isResourceLimit(e.code())) throw;
        err << "skipped n=" << n << " " << algorithmName(algorithm) << ": " << e.what()
            << "\n";
      }
    }
  }
  if (!options.output.empty()) writeFile(options.output, benchCsv(records));
  return records;
}

std::string benchCsv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "n,m,algorithm,epsilon,dual_calls,step_count,wall_nanos,seed,peak_regions\n";
  char epsilon[32];
  for (const BenchRecord& r : records) {
    std::snprintf(epsilon, sizeof epsilon, "%.17g", r.epsilon);
    out << r.n << ',' << r.m << ',' << algorithmName(r.algorithm) << ',' << epsilon << ','
        << r.dualCalls << ',' << r.stepCount << ',' << r.wallNanos << ',' << r.seed << ','
        << r.peakRegions << '\n';
  }
  return out.str();
}

}  // namespace kolmo
