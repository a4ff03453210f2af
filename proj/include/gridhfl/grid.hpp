#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridhfl/error.hpp"

namespace gridhfl {

/// Markings are stored 0-indexed: row r holds its X in column x_col(r).
/// Rows run bottom-to-top and columns left-to-right; cell (r, c) is the
/// unit square [c, c+1] x [r, r+1] of the planar fundamental domain.
struct LinkComponent {
  int id = 0;              // 1-based, ordered by smallest row
  std::vector<int> rows;   // H set, sorted, 0-based
  std::vector<int> cols;   // V set: cols[k] = column of the X in rows[k]
  int m() const { return static_cast<int>(rows.size()); }
  int min_col() const;
};

enum class Annulus { Horizontal, Vertical };

/// Integer 2-chain on the N x N cells, row-major.
struct Domain {
  int n = 0;
  std::vector<int> coeff;

  Domain() = default;
  explicit Domain(int size) : n(size), coeff(static_cast<size_t>(size) * size, 0) {}

  int& at(int r, int c) { return coeff[static_cast<size_t>(r) * n + c]; }
  int at(int r, int c) const { return coeff[static_cast<size_t>(r) * n + c]; }
  long total() const;

  Domain& operator+=(const Domain& other);
  Domain& operator-=(const Domain& other);
  friend Domain operator-(Domain d) {
    for (auto& v : d.coeff) v = -v;
    return d;
  }
  bool operator==(const Domain&) const = default;
};

class GridDiagram {
 public:
  /// Columns are 0-based here; throws NotAPermutation / BadIndex.
  GridDiagram(std::vector<int> x_col, std::vector<int> o_col);

  int n() const { return n_; }
  int x_col(int row) const { return x_col_[row]; }
  int o_col(int row) const { return o_col_[row]; }
  int x_row(int col) const { return x_row_[col]; }
  int o_row(int col) const { return o_row_[col]; }
  std::span<const int> x_cols() const { return x_col_; }
  std::span<const int> o_cols() const { return o_col_; }

  bool has_x(int row, int col) const { return x_col_[row] == col; }
  bool has_o(int row, int col) const { return o_col_[row] == col; }

  const std::vector<LinkComponent>& components() const { return components_; }
  int num_components() const { return static_cast<int>(components_.size()); }
  /// 0-based index into components() of the component through this row.
  int component_of_row(int row) const { return row_component_[row]; }
  int component_of_col(int col) const { return row_component_[x_row_[col]]; }

  bool operator==(const GridDiagram& other) const {
    return x_col_ == other.x_col_ && o_col_ == other.o_col_;
  }

 private:
  void derive_components();

  int n_;
  std::vector<int> x_col_, o_col_, x_row_, o_row_;
  std::vector<LinkComponent> components_;
  std::vector<int> row_component_;
};

/// Parses `N = ..`, `X = ..`, `O = ..` directives (newline or `;` separated,
/// `#` comments, 1-based columns).
GridDiagram parse_grid(std::string_view text);
GridDiagram load_grid(const std::string& path);

/// Canonical grid-file text; parse_grid(to_grid_text(g)) == g.
std::string to_grid_text(const GridDiagram& g);

/// Canonical JSON echo with 1-based indices.
std::string to_grid_json(const GridDiagram& g);

/// Stable 64-bit FNV-1a hash of the canonical JSON, as 16 hex digits.
std::string grid_hash(const GridDiagram& g);

/// Indicator of row i (horizontal) or column i (vertical); i is 1-based.
Domain annulus_region(const GridDiagram& g, Annulus kind, int i);

}  // namespace gridhfl
