// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Usage: acceptance [path-to-cli]

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <new>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "kolmo/candidate_matrix.hpp"
#include "kolmo/commands.hpp"
#include "kolmo/dual.hpp"
#include "kolmo/error.hpp"
#include "kolmo/io.hpp"
#include "kolmo/optimizers.hpp"
#include "kolmo/schedule.hpp"
#include "random_trees.hpp"

// Heap accounting. Every block carries its size in a 16-byte header so the
// live total can be tracked; peakBytes is the high-water mark since the
// last reset.
namespace heap {
std::size_t liveBytes = 0;
std::size_t peakBytes = 0;

void resetPeak() { peakBytes = liveBytes; }
}  // namespace heap

void* operator new(std::size_t size) {
  auto* block = static_cast<unsigned char*>(std::malloc(size + 16));
  if (block == nullptr) throw std::bad_alloc();
  *reinterpret_cast<std::size_t*>(block) = size;
  heap::liveBytes += size;
  heap::peakBytes = std::max(heap::peakBytes, heap::liveBytes);
  return block + 16;
}

void operator delete(void* p) noexcept {
  if (p == nullptr) return;
  auto* block = static_cast<unsigned char*>(p) - 16;
  heap::liveBytes -= *reinterpret_cast<std::size_t*>(block);
  std::free(block);
}

void* operator new[](std::size_t size) { return operator new(size); }
void operator delete[](void* p) noexcept { operator delete(p); }
void operator delete(void* p, std::size_t) noexcept { operator delete(p); }
void operator delete[](void* p, std::size_t) noexcept { operator delete(p); }

namespace {

using namespace kolmo;
using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  int failures = 0;
  std::ostringstream detail;
  std::ostringstream problems;
  std::ostringstream overflow;

  // Keeps the first three failure notes; later ones only count.
  std::ostream& fail() {
    pass = false;
    ++failures;
    if (failures > 3) return overflow;
    if (failures > 1) problems << "; ";
    return problems;
  }
};

// 500 instances with n in [2, 12] on the mass grid K = 64.
std::vector<DiscreteDistribution> smallCorpus() {
  std::vector<DiscreteDistribution> corpus;
  for (std::uint64_t s = 0; s < 500; ++s) {
    corpus.push_back(generateRandomInstance(2 + s % 11, 1000 + s, 64));
  }
  return corpus;
}

std::vector<double> testEpsilons(const DiscreteDistribution& x) {
  const auto candidates = candidateList(x);
  std::vector<double> out;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    out.push_back(candidates[k]);
    if (k + 1 < candidates.size()) out.push_back((candidates[k] + candidates[k + 1]) / 2);
  }
  return out;
}

std::size_t ceilLog2(std::size_t v) { return std::bit_width(v - 1); }

void oracleEquivalence(Outcome& o) {
  const auto start = Clock::now();
  std::size_t checks = 0;
  for (const auto& x : smallCorpus()) {
    for (std::size_t m = 1; m <= x.size(); ++m) {
      const auto oracle = oracleOptimal(x, m);
      const auto bins = binsApprox(x, m);
      const auto sdlbk = sdlbkApprox(x, m);
      const auto lin = linApprox(x, m);
      ++checks;
      for (const auto* r : {&bins, &sdlbk, &lin}) {
        if (std::abs(r->achievedEpsilon - oracle.achievedEpsilon) > 1e-12) {
          o.fail() << "n=" << x.size() << " m=" << m << " eps " << r->achievedEpsilon
                   << " vs oracle " << oracle.achievedEpsilon;
        }
      }
      if (!(bins.dist == sdlbk.dist) || !(bins.dist == lin.dist)) {
        o.fail() << "n=" << x.size() << " m=" << m << " distributions differ";
      }
    }
  }
  const double elapsed = secondsSince(start);
  if (elapsed >= 60.0) o.fail() << "runtime " << elapsed << " s";
  o.detail << " [" << checks << " (instance, m) pairs, " << elapsed << " s]";
}

void dualMinimality(Outcome& o) {
  std::size_t checks = 0;
  for (const auto& x : smallCorpus()) {
    for (const double eps : testEpsilons(x)) {
      ++checks;
      const std::size_t fast = minimalSupportSize(x, eps);
      const std::size_t slow = oracleMinimalSupport(x, eps);
      if (fast != slow) o.fail() << "n=" << x.size() << " eps=" << eps << ": " << fast << " vs " << slow;
    }
  }
  o.detail << " [" << checks << " (instance, eps) pairs]";
}

void exampleRegression(Outcome& o) {
  const std::vector<CdfPoint> a{{1, 0.3}, {2, 0.7}, {3, 0.9}, {4, 1.0}};
  const auto r = dualApprox(DiscreteDistribution::fromCdfPairs(a), 0.1, DualMode::kStrict);
  const std::vector<double> wantValues{1, 2, 3};
  const std::vector<double> wantCum{0.3, 0.7, 1.0};
  bool same = r.dist.size() == 3;
  for (std::size_t i = 0; same && i < 3; ++i) {
    same = r.dist.values()[i] == wantValues[i] && std::abs(r.dist.cum()[i] - wantCum[i]) <= 1e-12;
  }
  if (!same) o.fail() << "strict result differs from {(1,0.3),(2,0.7),(3,1.0)}";
  if (std::abs(r.achievedEpsilon - 0.1) > 1e-12) o.fail() << "eps " << r.achievedEpsilon;

  const std::vector<CdfPoint> skewed{{1, 0.05}, {2, 0.5}, {3, 1.0}};
  const auto d = DiscreteDistribution::fromCdfPairs(skewed);
  const auto literal = dualApprox(d, 0.1, DualMode::kPaperLiteral);
  const auto strict = dualApprox(d, 0.1, DualMode::kStrict);
  if (literal.dist.size() != 2 || literal.dist.values()[0] != 2.0) {
    o.fail() << "paper-literal support " << literal.dist.size();
  }
  if (strict.dist.size() != 3) o.fail() << "strict support " << strict.dist.size();
  o.detail << " [strict eps " << r.achievedEpsilon << "; literal/strict supports "
           << literal.dist.size() << "/" << strict.dist.size() << "]";
}

void feasibility(Outcome& o) {
  std::size_t checks = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto x = generateRandomInstance(2 + s % 63, 5000 + s, 64);
    std::size_t previous = x.size();
    for (const double eps : testEpsilons(x)) {
      ++checks;
      const auto r = dualApprox(x, eps);
      if (oneSidedExcess(r.dist, x) > 0.0) o.fail() << "undershoot at n=" << x.size();
      if (oneSidedExcess(x, r.dist) > eps + 1e-12) {
        o.fail() << "excess " << oneSidedExcess(x, r.dist) << " > eps " << eps;
      }
      const std::size_t size = minimalSupportSize(x, eps);
      if (size > previous) o.fail() << "support grew at eps " << eps;
      previous = size;
    }
  }
  o.detail << " [" << checks << " (instance, eps) pairs]";
}

void sortedLemma(Outcome& o) {
  std::size_t comparisons = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto x = generateRandomInstance(1 + s % 64, 7000 + s, 64);
    const CandidateMatrix m(x);
    for (std::size_t i = 1; i <= 2 * m.rows(); ++i) {
      for (std::size_t j = 1; j <= 2 * m.cols(); ++j) {
        comparisons += 2;
        if (m.entry(i, j) > m.entry(i + 1, j) || m.entry(i, j) > m.entry(i, j + 1)) {
          o.fail() << "n=" << x.size() << " at (" << i << "," << j << ")";
        }
      }
    }
  }
  o.detail << " [" << comparisons << " comparisons]";
}

void complexity(Outcome& o) {
  BenchOptions bench{.sizes = {1024, 2048, 4096, 8192, 16384},
                     .budget = 0,
                     .algorithms = {Algorithm::kSaddleback, Algorithm::kLinear},
                     .seed = 11};
  std::uint64_t worstPeak = 0;
  std::uint64_t worstCalls = 0;
  std::size_t worstBound = 0;
  std::size_t records = 0;
  std::ostringstream notes;
  for (const std::size_t m : {1u, 10u, 100u, 1000u}) {
    bench.budget = m;
    for (const BenchRecord& r : runBench(bench, notes)) {
      ++records;
      const auto x = generateRandomInstance(r.n, bench.seed, r.n);
      for (const double eps : {0.0, r.epsilon, 0.5}) {
        const auto d = dualApprox(x, eps);
        if (d.stepCount > 2 * r.n) o.fail() << "dual steps " << d.stepCount << " at n=" << r.n;
      }
      if (r.algorithm == Algorithm::kSaddleback && r.stepCount > 2 * r.n + 2) {
        o.fail() << "saddleback iterations " << r.stepCount << " at n=" << r.n;
      }
      if (r.algorithm == Algorithm::kLinear) {
        const std::size_t bound = 2 * ceilLog2(2 * r.n) + 8;
        if (r.dualCalls > bound) o.fail() << "linear calls " << r.dualCalls << " > " << bound;
        if (r.dualCalls * worstBound >= worstCalls * bound) {
          worstCalls = r.dualCalls;
          worstBound = bound;
        }
        if (r.peakRegions > 64) {
          o.fail() << "working set " << r.peakRegions << " regions > 64 at n=" << r.n
                   << " m=" << r.m;
        }
        worstPeak = std::max(worstPeak, r.peakRegions);
      }
    }
  }
  o.detail << " [" << records << " records; tightest linear calls " << worstCalls << "/"
           << worstBound << "; peak live regions " << worstPeak << "]";
}

void throughput(Outcome& o) {
  const std::size_t n = std::size_t{1} << 20;
  const auto big = generateRandomInstance(n, 21, n);
  heap::resetPeak();
  const std::size_t before = heap::liveBytes;
  auto start = Clock::now();
  const auto lin = linApprox(big, 1000);
  const double linSeconds = secondsSince(start);
  const std::size_t outputBytes = lin.dist.size() * 2 * sizeof(double);
  const std::size_t working = heap::peakBytes - before - outputBytes;
  if (linSeconds >= 5.0) o.fail() << "linear at 2^20 took " << linSeconds << " s";

  // The working buffers have fixed sizes, so one ceiling covers every n;
  // the smaller runs are held to it as well.
  std::vector<std::size_t> peaks;
  for (const std::size_t size : {std::size_t{1} << 16, std::size_t{1} << 18}) {
    const auto x = generateRandomInstance(size, 21, size);
    heap::resetPeak();
    const std::size_t base = heap::liveBytes;
    const auto r = linApprox(x, 1000);
    peaks.push_back(heap::peakBytes - base - r.dist.size() * 2 * sizeof(double));
  }
  const std::size_t ceiling = std::size_t{4} << 20;
  for (const std::size_t peak : {peaks[0], peaks[1], working}) {
    if (peak > ceiling) o.fail() << "working memory " << peak << " B > " << ceiling;
  }

  const auto mid = generateRandomInstance(std::size_t{1} << 14, 22, std::size_t{1} << 14);
  start = Clock::now();
  const auto sdlbk = sdlbkApprox(mid, 1000);
  const double sdlbkSeconds = secondsSince(start);
  if (sdlbkSeconds >= 10.0) o.fail() << "saddleback at 2^14 took " << sdlbkSeconds << " s";

  const auto atCap = generateRandomInstance(kDefaultBinsearchMaxSupport, 23, 4096);
  const auto aboveCap = generateRandomInstance(kDefaultBinsearchMaxSupport + 1, 23, 4097);
  bool refused = false;
  try {
    binsApprox(aboveCap, 10);
  } catch (const Error& e) {
    refused = e.code() == ErrorCode::kInputTooLarge;
  }
  if (!refused) o.fail() << "binsearch accepted n=4097";
  const auto capped = binsApprox(atCap, 10);
  if (!(capped.dist == linApprox(atCap, 10).dist)) o.fail() << "binsearch at n=4096 disagrees";

  o.detail << " [linear 2^20: " << linSeconds << " s, " << lin.dualCalls
           << " calls, working heap " << working / 1024 << " KiB (2^16: " << peaks[0] / 1024
           << ", 2^18: " << peaks[1] / 1024 << "); input " << n * 16 / 1024
           << " KiB; saddleback 2^14: " << sdlbkSeconds << " s; binsearch cap 4096 enforced]";
}

double medianLinearSeconds(std::size_t n) {
  const auto x = generateRandomInstance(n, 31, n);
  std::vector<double> times;
  for (int k = 0; k < 5; ++k) {
    const auto start = Clock::now();
    const auto r = linApprox(x, 1000);
    times.push_back(secondsSince(start));
    if (r.dist.size() > 1000) times.back() = 1e9;
  }
  std::nth_element(times.begin(), times.begin() + 2, times.end());
  return times[2];
}

void scaling(Outcome& o) {
  const double small = medianLinearSeconds(std::size_t{1} << 16);
  const double large = medianLinearSeconds(std::size_t{1} << 17);
  const double ratio = large / small;
  if (ratio > 2.6) o.fail() << "ratio " << ratio;
  o.detail << " [median 2^16: " << small << " s, 2^17: " << large << " s, ratio " << ratio << "]";
}

void scheduleConservativeness(Outcome& o) {
  testing::TreeGenerator trees(424242);
  double widest = 0.0;
  for (int k = 0; k < 100; ++k) {
    const ScheduleNode tree = trees.next();
    if (tree.leafCount() > 5 || tree.depth() > 3) o.fail() << "generator out of bounds";
    const auto exact = evaluateExact(tree);
    const auto trimmed = evaluate(tree, 4, Algorithm::kLinear);
    const double total = trimmed.budget.total;
    widest = std::max(widest, total);
    // Both CDFs are step functions, so checking the union support suffices.
    const double under = oneSidedExcess(trimmed.dist, exact);
    const double over = oneSidedExcess(exact, trimmed.dist);
    if (under > 1e-12) o.fail() << "tree " << k << ": trimmed CDF below exact by " << under;
    if (over > total + 1e-9) o.fail() << "tree " << k << ": gap " << over << " > budget " << total;

    const double lo = exact.minValue() - 1.0;
    const double hi = exact.maxValue() + 1.0;
    for (int d = 0; d < 20; ++d) {
      const double deadline = lo + (hi - lo) * d / 19.0;
      const double p = 1.0 - exact.cdfAt(deadline);
      const MissInterval interval = missProbability(trimmed, deadline);
      if (p < interval.lo - 1e-12 || p > interval.hi + 1e-12) {
        o.fail() << "tree " << k << " deadline " << deadline << ": " << p << " outside ["
                 << interval.lo << ", " << interval.hi << "]";
      }
    }
  }
  o.detail << " [100 trees x 20 deadlines; largest budget " << widest << "]";
}

bool sameDistribution(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.values()[i] != b.values()[i] || std::abs(a.cum()[i] - b.cum()[i]) > 1e-12) return false;
  }
  return true;
}

bool sameTree(const ScheduleNode& a, const ScheduleNode& b) {
  if (a.kind() != b.kind() || a.children().size() != b.children().size()) return false;
  if (a.kind() == ScheduleNode::Kind::kLeaf) return sameDistribution(a.distribution(), b.distribution());
  for (std::size_t k = 0; k < a.children().size(); ++k) {
    if (!sameTree(a.children()[k], b.children()[k])) return false;
  }
  return true;
}

// Runs parse on text; anything other than success or a kolmo::Error is a
// crash-class failure.
template <typename Parse>
bool parsesOrDiagnoses(Parse&& parse, const std::string& text, std::string* message) {
  try {
    parse(text);
    return true;
  } catch (const Error& e) {
    *message = e.what();
    return true;
  } catch (const std::exception& e) {
    *message = std::string("escaped: ") + e.what();
    return false;
  } catch (...) {
    *message = "escaped: non-standard exception";
    return false;
  }
}

void ioRoundTrips(Outcome& o, const std::string& cli) {
  std::mt19937_64 rng(99);
  testing::TreeGenerator trees(77, 8, 4, 12);
  std::vector<std::string> csvs;
  std::vector<std::string> jsons;
  for (int k = 0; k < 200; ++k) {
    const auto x = generateRandomInstance(1 + rng() % 500, rng(), 1000);
    csvs.push_back(writeDistributionCsv(x));
    if (!sameDistribution(parseDistributionCsv(csvs.back()), x)) o.fail() << "csv artifact " << k;
    const ScheduleNode tree = trees.next();
    jsons.push_back(writeScheduleJson(tree));
    if (!sameTree(parseScheduleJson(jsons.back()), tree)) o.fail() << "json artifact " << k;
  }

  // Hand-written malformed inputs must name a line or a field.
  const std::vector<std::pair<std::string, std::string>> badCsv{
      {"1,0.5\n2,zero\n", "line 2"}, {"1;1\n", "line 1"}, {"1,0.5,0.5\n", "line 1"},
      {"\n\n,1\n", "line 3"},       {"1,0.5\n2,0.4\n", "sum"}};
  for (const auto& [text, needle] : badCsv) {
    std::string message;
    if (!parsesOrDiagnoses(parseDistributionCsv, text, &message) ||
        message.find(needle) == std::string::npos) {
      o.fail() << "csv diagnostic for '" << text << "': " << message;
    }
  }
  const std::vector<std::pair<std::string, std::string>> badJson{
      {R"({"type":"series","children":[{"type":"leaf","pmf":[[1,1]]}]})", "root/children"},
      {R"({"type":"leaf","pmf":[[1,"a"]]})", "root/pmf/0"},
      {R"({"type":"fork"})", "root/type"},
      {R"({"type":"leaf","pmf":[[1,1]])", "parse"}};
  for (const auto& [text, needle] : badJson) {
    std::string message;
    if (!parsesOrDiagnoses(parseScheduleJson, text, &message) ||
        message.find(needle) == std::string::npos) {
      o.fail() << "json diagnostic for '" << text << "': " << message;
    }
  }

  // Mutated artifacts: truncations and byte flips may parse or be rejected,
  // but never escape as anything else.
  std::size_t mutants = 0;
  const std::string alphabet = "0123456789,.-e\n[]{}\":x ";
  for (int k = 0; k < 200; ++k) {
    for (auto* pool : {&csvs, &jsons}) {
      std::string text = (*pool)[k];
      if (text.empty()) continue;
      if (rng() % 2 == 0) {
        text.resize(rng() % text.size());
      } else {
        for (int flips = 0; flips < 3; ++flips) text[rng() % text.size()] = alphabet[rng() % alphabet.size()];
      }
      std::string message;
      const bool ok = pool == &csvs ? parsesOrDiagnoses(parseDistributionCsv, text, &message)
                                    : parsesOrDiagnoses(parseScheduleJson, text, &message);
      if (!ok) o.fail() << "mutant " << k << " " << message;
      ++mutants;
    }
  }

  // The command-line tool maps a data error to exit status 3 and reports
  // the line.
  std::string cliNote = "cli not checked";
  if (!cli.empty()) {
    const auto dir = std::filesystem::temp_directory_path() / "kolmo_acceptance";
    std::filesystem::create_directories(dir);
    writeFile((dir / "bad.csv").string(), "1,0.5\n2,abc\n");
    const std::string command = "\"" + cli + "\" compress --input \"" + (dir / "bad.csv").string() +
                                "\" --m 1 --output \"" + (dir / "out.csv").string() + "\" 2> \"" +
                                (dir / "err.txt").string() + "\"";
    const int status = std::system(command.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    const std::string err = readFile((dir / "err.txt").string());
    if (code != kExitData || err.find("line 2") == std::string::npos) {
      o.fail() << "cli exit " << code << ", stderr '" << err << "'";
    }
    cliNote = "cli exit " + std::to_string(code);
    std::filesystem::remove_all(dir);
  }
  o.detail << " [200 csv + 200 json round trips, " << mutants << " mutants, " << cliNote << "]";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"oracle equivalence", oracleEquivalence},
      {"dual minimality", dualMinimality},
      {"example regression", exampleRegression},
      {"feasibility and one-sidedness", feasibility},
      {"sorted matrix", sortedLemma},
      {"complexity witnesses", complexity},
      {"throughput", throughput},
      {"scaling shape", scaling},
      {"schedule conservativeness", scheduleConservativeness},
      {"io round trips", [&](Outcome& o) { ioRoundTrips(o, cli); }},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome outcome;
    const auto start = Clock::now();
    try {
      criteria[k].second(outcome);
    } catch (const std::exception& e) {
      outcome.fail() << "exception: " << e.what();
    }
    if (outcome.failures > 3) outcome.problems << " (+" << outcome.failures - 3 << " more)";
    const std::string summary = outcome.pass ? outcome.detail.str()
                                             : outcome.problems.str() + outcome.detail.str();
    std::printf("%s criterion %zu (%s):%s%s (%.2f s)\n", outcome.pass ? "PASS" : "FAIL", k + 1,
                criteria[k].first.c_str(), outcome.pass ? "" : " ", summary.c_str(),
                secondsSince(start));
    std::fflush(stdout);
    if (!outcome.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
