#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gridhfl/grid.hpp"

namespace gridhfl {

/// Default cap on N for anything that materializes all N! generators.
inline constexpr int kDefaultSizeCap = 8;
/// Cell bitmasks are 64-bit, which bounds every table-based computation.
inline constexpr int kMaxMaskedIndex = 8;

/// One intersection point per row: the coordinate in row r sits on the
/// vertical circle sigma[r] (both 0-based).
struct Generator {
  std::vector<int> sigma;

  static Generator identity(int n);
  int n() const { return static_cast<int>(sigma.size()); }
  /// 1-based, dot separated permutation word, e.g. "2.1".
  std::string word() const;
  auto operator<=>(const Generator&) const = default;
};

/// Lazy lexicographic enumeration of all N! generators.
class GeneratorRange {
 public:
  class iterator {
   public:
    using value_type = Generator;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    explicit iterator(int n) : current_{Generator::identity(n)}, done_(false) {}
    const Generator& operator*() const { return current_; }
    const Generator* operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      auto tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(const iterator& other) const { return done_ == other.done_ && (done_ || current_ == other.current_); }

   private:
    Generator current_;
    bool done_ = true;
  };

  explicit GeneratorRange(int n) : n_(n) {}
  iterator begin() const { return iterator(n_); }
  iterator end() const { return iterator(); }

 private:
  int n_;
};

/// Throws SizeLimit when the grid index exceeds `cap`.
GeneratorRange generators(const GridDiagram& g, int cap = kDefaultSizeCap);

std::uint64_t factorial(int n);

/// Rectangle anchored at its source generator. The bottom-left corner is the
/// coordinate of `from` in row_bl, the top-right corner the one in row_tr.
struct Rectangle {
  Generator from;
  Generator to;
  int row_bl = 0, row_tr = 0;
  int col_bl = 0, col_tr = 0;
  int width = 0, height = 0;
  bool wraps_cols = false, wraps_rows = false;
  std::uint64_t cells = 0;  // bit r*N + c
  int n_x = 0, n_o = 0;
  std::vector<int> n_x_comp, n_o_comp;

  bool empty() const { return n_x == 0 && n_o == 0; }
  Domain domain() const;
  /// Canonical key "<from word>|<row_bl>.<row_tr>|<wrap cols><wrap rows>", 1-based rows.
  std::string key() const;
  bool operator==(const Rectangle& other) const {
    return from == other.from && row_bl == other.row_bl && row_tr == other.row_tr;
  }
};

/// All rectangles out of x ordered by (row_bl, row_tr).
std::vector<Rectangle> rectangles_from(const GridDiagram& g, const Generator& x);
std::vector<Rectangle> empty_rectangles_from(const GridDiagram& g, const Generator& x);

struct Decomposition {
  Rectangle first;   // x -> z
  Rectangle second;  // z -> y
};

struct Maslov2Group {
  Generator end;
  Domain domain;
  std::vector<Decomposition> decompositions;
};

/// Groups every composable pair out of x by (end generator, summed region).
/// Throws StructureViolation when a group has the wrong size.
std::vector<Maslov2Group> maslov2_decompositions(const GridDiagram& g, const Generator& x);

struct ConnectingDomain {
  Domain domain;
  int steps = 0;  // signed count: +1 per forward rectangle, -1 per reversed one
};

/// Domain of a rectangle path from x to y found by bidirectional search over
/// the rectangle graph.
ConnectingDomain connecting_domain(const GridDiagram& g, const Generator& x, const Generator& y);

struct GradingVector {
  int maslov = 0;
  std::vector<int> alexander2;  // doubled Alexander gradings, one per component
  auto operator<=>(const GradingVector&) const = default;
};

/// (M(x) - M(y), A2(x) - A2(y)) computed from a connecting domain.
GradingVector relative_gradings(const GridDiagram& g, const Generator& x, const Generator& y);
/// Relative gradings read off an arbitrary signed rectangle path domain.
GradingVector gradings_of_domain(const GridDiagram& g, const Domain& d, int steps);

GradingVector absolute_gradings(const GridDiagram& g, const Generator& x);

/// Generators covered by x in the Bruhat order (reductions of length one).
std::vector<Generator> hasse_covers(const GridDiagram& g, const Generator& x);

// ---------------------------------------------------------------------------
// Indexed tables used by the sign solver and the chain complex.

/// All N! permutations in lexicographic order with O(N^2) ranking.
class GeneratorIndex {
 public:
  explicit GeneratorIndex(int n, int cap = kDefaultSizeCap);

  int n() const { return n_; }
  std::size_t size() const { return count_; }
  std::span<const std::uint8_t> perm(std::size_t index) const {
    return {perms_.data() + index * n_, static_cast<std::size_t>(n_)};
  }
  Generator generator(std::size_t index) const;
  std::size_t index_of(std::span<const int> sigma) const;
  std::size_t index_of(const Generator& x) const { return index_of(std::span<const int>(x.sigma)); }

 private:
  int n_;
  std::size_t count_;
  std::vector<std::uint8_t> perms_;
  std::vector<std::size_t> fact_;
};

struct RectSlot {
  std::uint64_t cells = 0;
  std::uint32_t to = 0;
  std::uint8_t row_bl = 0, row_tr = 0;
  std::uint8_t n_x = 0, n_o = 0;
  bool valid = false;
  bool wraps_cols = false, wraps_rows = false;
  bool empty() const { return n_x == 0 && n_o == 0; }
};

/// Every candidate rectangle of a grid: one slot per (source generator,
/// ordered moving-row pair). Slot ids are the canonical variable order.
class RectangleTable {
 public:
  explicit RectangleTable(const GridDiagram& g, int cap = kDefaultSizeCap);

  const GridDiagram& grid() const { return grid_; }
  const GeneratorIndex& generators() const { return gens_; }
  int n() const { return grid_.n(); }
  std::size_t pairs_per_generator() const { return pairs_; }
  std::size_t slot_count() const { return slots_.size(); }
  const RectSlot& slot(std::size_t id) const { return slots_[id]; }
  std::size_t slot_id(std::size_t gen, int row_bl, int row_tr) const;
  std::size_t source_of(std::size_t id) const { return id / pairs_; }
  std::size_t valid_count() const { return valid_count_; }

  Rectangle rectangle(std::size_t id) const;
  std::string key(std::size_t id) const;
  /// Valid slots from `from` that end at `to`, in slot order.
  std::vector<std::size_t> between(std::size_t from, std::size_t to) const;

  std::uint64_t x_mask() const { return x_mask_; }
  std::uint64_t o_mask() const { return o_mask_; }
  std::uint64_t row_mask(int r) const;
  std::uint64_t col_mask(int c) const;

 private:
  GridDiagram grid_;
  GeneratorIndex gens_;
  std::size_t pairs_;
  std::vector<RectSlot> slots_;
  std::size_t valid_count_ = 0;
  std::uint64_t x_mask_ = 0, o_mask_ = 0;
};

/// Composable pairs from one source grouped by (end, region). A region with
/// coefficients in {0,1,2} is stored as (support, doubled cells).
struct SlotGroup {
  std::uint32_t end = 0;
  std::uint64_t ones = 0, twos = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
};

/// Index-level maslov2 grouping; validates the 1-or-2 group size contract.
std::vector<SlotGroup> slot_groups_from(const RectangleTable& table, std::size_t gen);

/// Annulus decomposition from `gen`: the (first, second) slot pair whose sum
/// is row i (horizontal) or column i (vertical), 0-based i.
std::pair<std::size_t, std::size_t> annulus_slots(const RectangleTable& table, std::size_t gen,
                                                   Annulus kind, int i);

/// Absolute gradings of every generator, indexed like table.generators().
std::vector<GradingVector> all_gradings(const RectangleTable& table);

}  // namespace gridhfl
