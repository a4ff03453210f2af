#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridhfl/grid.hpp"

// Brute-force verifiers. Everything here works from the raw definitions on a
// GridDiagram and shares no code with the combinatorics, signs or homology
// modules, so agreement between the two is evidence rather than tautology.

namespace gridhfl::oracles {

struct RectangleCensus {
  std::uint64_t total = 0;
  std::uint64_t empty = 0;
  int max_per_pair = 0;
};

/// Checks all four corner configurations of every generator pair. N <= 5.
RectangleCensus exhaustive_rectangle_census(const GridDiagram& g);

struct GaugeCensus {
  int log2_solutions = 0;
  std::uint64_t gauge_classes = 0;
  std::uint64_t distinct_fingerprints = 0;  // distinct (h(1..N), v(1..N-1)) over all solutions
};

/// Counts sign assignments and their fingerprints from the square relations
/// alone. 2 <= N <= 3.
GaugeCensus gauge_class_census(const GridDiagram& g);

struct GradingReport {
  std::uint64_t pairs = 0;
  std::uint64_t paths = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// For every generator pair, compares absolute grading differences against
/// the relative formulas evaluated on random rectangle paths. N <= 4.
GradingReport grading_cross_check(const GridDiagram& g, int paths_per_pair = 3, std::uint64_t seed = 1);

}  // namespace gridhfl::oracles
