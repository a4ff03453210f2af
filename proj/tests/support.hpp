#pragma once

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "gridhfl/grid.hpp"
#include "gridhfl/signs.hpp"

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(GRIDHFL_DATA_DIR) + "/" + name; }

inline gridhfl::GridDiagram bundled(const std::string& name) { return gridhfl::load_grid(data_path(name + ".grid")); }

inline gridhfl::GridDiagram g1() { return gridhfl::parse_grid("N=1; X=1; O=1"); }
inline gridhfl::GridDiagram g2u() { return gridhfl::parse_grid("N=2; X=1 2; O=1 2"); }
inline gridhfl::GridDiagram g2k() { return gridhfl::parse_grid("N=2; X=2 1; O=1 2"); }
inline gridhfl::GridDiagram g4h() { return gridhfl::parse_grid("N=4; X=3 4 1 2; O=1 2 3 4"); }
inline gridhfl::GridDiagram g5t() { return gridhfl::parse_grid("N=5; X=3 4 5 1 2; O=1 2 3 4 5"); }

inline gridhfl::GridDiagram random_grid(int n, std::mt19937_64& rng) {
  std::vector<int> x(n), o(n);
  std::iota(x.begin(), x.end(), 0);
  std::iota(o.begin(), o.end(), 0);
  std::shuffle(x.begin(), x.end(), rng);
  std::shuffle(o.begin(), o.end(), rng);
  return gridhfl::GridDiagram(x, o);
}

/// Every profile with an even number of "wrong" entries, i.e. all 2^(2N-1)
/// targets meeting the parity condition, in counting order.
inline std::vector<gridhfl::HVProfile> legal_targets(int n) {
  std::vector<gridhfl::HVProfile> out;
  for (unsigned mask = 0; mask < (1u << (2 * n)); ++mask) {
    gridhfl::HVProfile p;
    int ones_v = 0, minus_h = 0;
    for (int i = 0; i < n; ++i) {
      p.h.push_back(mask >> i & 1 ? -1 : 1);
      p.v.push_back(mask >> (n + i) & 1 ? 1 : -1);
      minus_h += p.h.back() == -1;
      ones_v += p.v.back() == 1;
    }
    if (ones_v % 2 == minus_h % 2) out.push_back(p);
  }
  return out;
}

inline gridhfl::HVProfile random_target(int n, std::mt19937_64& rng) {
  const auto all = legal_targets(n);
  return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace testing
