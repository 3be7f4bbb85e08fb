#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kolmo/commands.hpp"

namespace {

std::map<std::string, kolmo::Algorithm> algorithmTable() {
  std::map<std::string, kolmo::Algorithm> table;
  for (const kolmo::Algorithm a : {kolmo::Algorithm::kBinsearch, kolmo::Algorithm::kSaddleback,
                                   kolmo::Algorithm::kLinear, kolmo::Algorithm::kOracle}) {
    table.emplace(std::string(kolmo::algorithmName(a)), a);
  }
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compress discrete distributions under the one-sided Kolmogorov distance"};
  app.require_subcommand(1);
  const auto algorithms = algorithmTable();
  const std::map<std::string, kolmo::DualMode> modes{
      {"strict", kolmo::DualMode::kStrict}, {"paper", kolmo::DualMode::kPaperLiteral}};

  kolmo::CompressOptions compress;
  std::size_t compressBudget = 0;
  double compressEpsilon = 0.0;
  auto* compressCmd = app.add_subcommand("compress", "Compress a distribution CSV");
  compressCmd->add_option("--input", compress.input, "Input CSV (outcome,mass)")
      ->required();
  compressCmd->add_option("--output", compress.output, "Output CSV")->required();
  auto* budgetOpt = compressCmd->add_option("--m", compressBudget, "Support budget");
  compressCmd->add_option("--algorithm", compress.algorithm, "Optimizer")
      ->transform(CLI::CheckedTransformer(algorithms, CLI::ignore_case));
  auto* epsilonOpt = compressCmd->add_option(
      "--epsilon", compressEpsilon, "Fixed error; runs one greedy pass instead of optimizing");
  compressCmd->add_option("--mode", compress.mode, "Greedy mode for --epsilon")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));

  kolmo::DistanceOptions distance;
  auto* distanceCmd = app.add_subcommand("distance", "Kolmogorov distance of two CSVs");
  distanceCmd->add_option("first", distance.first)->required();
  distanceCmd->add_option("second", distance.second)->required();
  distanceCmd->add_flag("--one-sided", distance.oneSided,
                        "Print sup (F_second - F_first) instead");

  kolmo::ScheduleOptions schedule;
  auto* scheduleCmd = app.add_subcommand("schedule", "Deadline-miss interval of a schedule");
  scheduleCmd->add_option("--tree", schedule.tree, "Schedule JSON")->required();
  scheduleCmd->add_option("--trim", schedule.trim, "Support budget after each step")
      ->required();
  scheduleCmd->add_option("--algorithm", schedule.algorithm, "Optimizer")
      ->transform(CLI::CheckedTransformer(algorithms, CLI::ignore_case));
  scheduleCmd->add_option("--deadline", schedule.deadline)->required();

  kolmo::BenchOptions bench;
  auto* benchCmd = app.add_subcommand("bench", "Time optimizers on generated instances");
  benchCmd->add_option("--sizes", bench.sizes, "Comma-separated support sizes")
      ->required()
      ->delimiter(',');
  benchCmd->add_option("--m", bench.budget, "Support budget")->required();
  benchCmd->add_option("--algorithms", bench.algorithms, "Comma-separated optimizers")
      ->required()
      ->delimiter(',')
      ->transform(CLI::CheckedTransformer(algorithms, CLI::ignore_case));
  benchCmd->add_option("--seed", bench.seed, "Generator seed");
  benchCmd->add_option("--grid", bench.grid, "Mass grid K (default: n)");
  benchCmd->add_option("--output", bench.output, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kolmo::kExitOk : kolmo::kExitUsage;
  }

  try {
    if (*compressCmd) {
      if (*budgetOpt) compress.budget = compressBudget;
      if (*epsilonOpt) compress.epsilon = compressEpsilon;
      kolmo::runCompress(compress, std::cout);
    } else if (*distanceCmd) {
      kolmo::runDistance(distance, std::cout);
    } else if (*scheduleCmd) {
      kolmo::runSchedule(schedule, std::cout);
    } else if (*benchCmd) {
      const auto records = kolmo::runBench(bench, std::cerr);
      std::cout << records.size() << " records written to " << bench.output << "\n";
    }
  } catch (const kolmo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kolmo::exitStatusFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kolmo::kExitData;
  }
  return kolmo::kExitOk;
}
