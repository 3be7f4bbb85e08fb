#ifndef KOLMO_IO_HPP_
#define KOLMO_IO_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "kolmo/distribution.hpp"
#include "kolmo/schedule.hpp"

namespace kolmo {

// Distribution CSV: one "outcome,mass" pair per line, optionally preceded by
// the header "value,probability". Blank lines are ignored.
DiscreteDistribution parseDistributionCsv(std::string_view text);
// No header; both columns with 17 significant digits.
std::string writeDistributionCsv(const DiscreteDistribution& dist);

// Schedule JSON, one object per node:
//   {"type": "leaf", "pmf": [[value, mass], ...]}
//   {"type": "series" | "parallel", "children": [node, node, ...]}
ScheduleNode parseScheduleJson(std::string_view text);
std::string writeScheduleJson(const ScheduleNode& tree);

/**
 * Deterministic test instance with support size n.
 *
 * Outcomes: n distinct integers from {0, ..., 10n}, chosen by sequential
 * selection sampling (each integer k is taken with probability
 * needed / remaining). Masses: independent integers uniform on [1, grid],
 * divided by their total. All randomness comes from std::mt19937_64 seeded
 * with seed; integers in a range are drawn by rejection from its raw 64-bit
 * output and the selection test uses the top 53 bits as a double in [0, 1),
 * so the instance does not depend on the standard library's distributions.
 * Throws InvalidParams unless n >= 1 and grid >= n.
 */
DiscreteDistribution generateRandomInstance(std::size_t n, std::uint64_t seed,
                                            std::uint64_t grid);

std::string readFile(const std::string& path);
void writeFile(const std::string& path, std::string_view contents);

}  // namespace kolmo

#endif  // KOLMO_IO_HPP_
