#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gridhfl/combinatorics.hpp"

namespace gridhfl {

/// Horizontal and vertical functions, values in {-1, +1}, 0-based index.
struct HVProfile {
  std::vector<int> h, v;
  bool operator==(const HVProfile&) const = default;
};

/// Component signs r[i], ordered like GridDiagram::components().
struct WeakClass {
  std::vector<int> r;
  bool operator==(const WeakClass&) const = default;
  /// "+,-,+" style label.
  std::string label() const;
};

/// Multiplicative 2-cochain: -1 on the listed cells (row, col), 0-based.
struct TwoCochain {
  std::set<std::pair<int, int>> flip;
  std::uint64_t mask(int n) const;
};

using TablePtr = std::shared_ptr<const RectangleTable>;

/// A +-1 value on every rectangle instance of a grid, indexed by slot id.
class SignAssignment {
 public:
  SignAssignment(TablePtr table, std::vector<std::int8_t> values);

  const RectangleTable& table() const { return *table_; }
  const TablePtr& table_ptr() const { return table_; }
  const GridDiagram& grid() const { return table_->grid(); }
  int at(std::size_t slot) const { return values_[slot]; }
  int at(const Rectangle& r) const;
  const std::vector<std::int8_t>& values() const { return values_; }
  bool operator==(const SignAssignment& other) const { return values_ == other.values_; }

 private:
  TablePtr table_;
  std::vector<std::int8_t> values_;  // 0 on invalid slots
};

TablePtr make_table(const GridDiagram& g, int cap = kDefaultSizeCap);

/// Parity condition |v^-1(1)| = |h^-1(-1)| mod 2.
bool satisfies_parity(const HVProfile& target);

struct SolveStats {
  std::size_t variables = 0;
  std::size_t equations = 0;
  std::size_t gauge_fixed = 0;
  std::size_t propagated = 0;
  std::size_t residual = 0;  // variables left to dense elimination
};

/// Sign assignment realizing `target`. Throws ParityViolation or Infeasible.
SignAssignment solve_signs(const TablePtr& table, const HVProfile& target, SolveStats* stats = nullptr,
                           unsigned jobs = 0);
SignAssignment solve_signs(const GridDiagram& g, const HVProfile& target);

/// h = 1, v = -1, with v flipped at the smallest column of each component
/// whose requested sign is -1. Throws ProductNotOne.
HVProfile canonical_targets(const GridDiagram& g, const WeakClass& w);

/// All 2^(l-1) weak classes, lexicographic with + before -.
std::vector<WeakClass> all_weak_classes(const GridDiagram& g);

/// Annulus products; throws ProjectionViolation if they depend on the generator.
HVProfile hv_profile(const SignAssignment& s);

WeakClass component_signs(const GridDiagram& g, const HVProfile& p);
WeakClass component_signs(const SignAssignment& s);

/// (h(1..N), v(1..N-1)).
std::vector<int> phi(const SignAssignment& s);
std::vector<int> phi(const HVProfile& p);

SignAssignment modify_by_cochain(const SignAssignment& s, const TwoCochain& m);

/// s'(R) = t(from) t(to) s(R), t indexed like table().generators().
SignAssignment gauge_transform(const SignAssignment& s, const std::vector<int>& t);

/// t with s1(R) = t(x) t(y) s2(R) and t(identity) = +1, if one exists.
std::optional<std::vector<int>> gauge_witness(const SignAssignment& s1, const SignAssignment& s2);

/// Gauge-equivalent copy of s2 that agrees with s1 on every empty rectangle.
std::optional<SignAssignment> weak_align(const SignAssignment& s1, const SignAssignment& s2);

struct SignReport {
  std::size_t square_violations = 0;
  std::size_t projection_violations = 0;
  bool product_ok = true;
  std::vector<std::string> messages;  // first few violations
  bool ok() const { return square_violations == 0 && projection_violations == 0 && product_ok; }
};

SignReport verify_sign_assignment(const SignAssignment& s);

struct SignCensus {
  int log2_assignments = 0;
  int log2_gauge_classes = 0;
  std::uint64_t assignments() const { return std::uint64_t{1} << log2_assignments; }
  std::uint64_t gauge_classes() const { return std::uint64_t{1} << log2_gauge_classes; }
};

/// Counts sign assignments by the rank of the square-relation system. N <= 3.
SignCensus enumerate_sign_assignments(const GridDiagram& g);

// Serialization: one JSON header line ("# {...}") then "key<TAB>+1|-1" rows.
void write_signs(std::ostream& out, const SignAssignment& s);
SignAssignment read_signs(std::istream& in, const TablePtr& table);

}  // namespace gridhfl
