#include "kolmo/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "kolmo/error.hpp"

namespace kolmo {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parseFailure(std::size_t line, const std::string& what) {
  std::ostringstream out;
  out << "line " << line << ": " << what;
  throw Error(ErrorCode::kParseError, out.str());
}

double parseNumber(std::string_view field, std::size_t line, const char* column) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || end != field.data() + field.size()) {
    parseFailure(line, std::string(column) + " '" + std::string(field) +
                           "' is not a number");
  }
  return value;
}

[[noreturn]] void schemaFailure(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kSchemaError, where + ": " + what);
}

ScheduleNode nodeFromJson(const json& j, const std::string& where) {
  if (!j.is_object()) schemaFailure(where, "expected an object");
  const auto type = j.find("type");
  if (type == j.end() || !type->is_string()) {
    schemaFailure(where + "/type", "missing or not a string");
  }
  const std::string kind = type->get<std::string>();

  if (kind == "leaf") {
    const auto pmf = j.find("pmf");
    if (pmf == j.end() || !pmf->is_array()) {
      schemaFailure(where + "/pmf", "missing or not an array");
    }
    std::vector<Atom> atoms;
    for (std::size_t k = 0; k < pmf->size(); ++k) {
      const json& pair = (*pmf)[k];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
          !pair[1].is_number()) {
        schemaFailure(where + "/pmf/" + std::to_string(k),
                      "expected a [value, mass] pair of numbers");
      }
      atoms.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    try {
      return ScheduleNode::leaf(DiscreteDistribution::fromPmf(atoms));
    } catch (const Error& e) {
      throw Error(e.code(), where + "/pmf: " + e.detail());
    }
  }

  if (kind == "series" || kind == "parallel") {
    const auto children = j.find("children");
    if (children == j.end() || !children->is_array()) {
      schemaFailure(where + "/children", "missing or not an array");
    }
    if (children->size() < 2) {
      schemaFailure(where + "/children", "needs at least 2 children, got " +
                                             std::to_string(children->size()));
    }
    std::vector<ScheduleNode> nodes;
    for (std::size_t k = 0; k < children->size(); ++k) {
      nodes.push_back(nodeFromJson((*children)[k], where + "/children/" + std::to_string(k)));
    }
    return kind == "series" ? ScheduleNode::series(std::move(nodes))
                            : ScheduleNode::parallel(std::move(nodes));
  }

  schemaFailure(where + "/type", "unknown node type '" + kind + "'");
}

json nodeToJson(const ScheduleNode& node) {
  switch (node.kind()) {
    case ScheduleNode::Kind::kLeaf: {
      json pmf = json::array();
      for (const Atom& atom : node.distribution().pmf()) {
        pmf.push_back(json::array({atom.value, atom.mass}));
      }
      return {{"type", "leaf"}, {"pmf", std::move(pmf)}};
    }
    case ScheduleNode::Kind::kSeries:
    case ScheduleNode::Kind::kParallel: {
      json children = json::array();
      for (const ScheduleNode& child : node.children()) children.push_back(nodeToJson(child));
      return {{"type", node.kind() == ScheduleNode::Kind::kSeries ? "series" : "parallel"},
              {"children", std::move(children)}};
    }
  }
  return {};
}

// Uniform on [0, bound) by rejection from raw 64-bit draws.
std::uint64_t uniformBelow(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  while (true) {
    const std::uint64_t x = rng();
    if (x >= limit) return x % bound;
  }
}

double unitDouble(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

DiscreteDistribution parseDistributionCsv(std::string_view text) {
  std::vector<Atom> atoms;
  std::size_t line = 0;
  bool sawContent = false;
  while (!text.empty()) {
    ++line;
    const std::size_t newline = text.find('\n');
    std::string_view row = trim(text.substr(0, newline));
    text.remove_prefix(newline == std::string_view::npos ? text.size() : newline + 1);
    if (row.empty()) continue;
    if (!sawContent && row == "value,probability") {
      sawContent = true;
      continue;
    }
    sawContent = true;
    const std::size_t comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      parseFailure(line, "expected exactly two fields 'outcome,mass'");
    }
    atoms.push_back({parseNumber(row.substr(0, comma), line, "outcome"),
                     parseNumber(row.substr(comma + 1), line, "mass")});
  }
  return DiscreteDistribution::fromPmf(atoms);
}

std::string writeDistributionCsv(const DiscreteDistribution& dist) {
  std::string out;
  char buffer[64];
  for (const Atom& atom : dist.pmf()) {
    const int length = std::snprintf(buffer, sizeof buffer, "%.17g,%.17g\n", atom.value, atom.mass);
    out.append(buffer, static_cast<std::size_t>(length));
  }
  return out;
}

ScheduleNode parseScheduleJson(std::string_view text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::exception& e) {
    // Syntax errors and out-of-range numbers alike.
    throw Error(ErrorCode::kParseError, e.what());
  }
  return nodeFromJson(document, "root");
}

std::string writeScheduleJson(const ScheduleNode& tree) {
  return nodeToJson(tree).dump(2) + "\n";
}

DiscreteDistribution generateRandomInstance(std::size_t n, std::uint64_t seed,
                                            std::uint64_t grid) {
  if (n < 1 || grid < n) {
    std::ostringstream out;
    out << "need n >= 1 and grid >= n, got n = " << n << ", grid = " << grid;
    throw Error(ErrorCode::kInvalidParams, out.str());
  }
  std::mt19937_64 rng(seed);

  std::vector<double> values;
  values.reserve(n);
  const std::uint64_t population = 10 * static_cast<std::uint64_t>(n) + 1;
  for (std::uint64_t k = 0; values.size() < n; ++k) {
    const double remaining = static_cast<double>(population - k);
    const double needed = static_cast<double>(n - values.size());
    if (remaining * unitDouble(rng) < needed) values.push_back(static_cast<double>(k));
  }

  std::vector<double> cum(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += static_cast<double>(1 + uniformBelow(rng, grid));
    cum[i] = total;
  }
  for (double& c : cum) c /= total;
  return DiscreteDistribution::fromStepCdf(std::move(values), std::move(cum));
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void writeFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIoError, "failed writing '" + path + "'");
}

}  // namespace kolmo
