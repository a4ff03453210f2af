#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gridhfl {

/// Dense row-major matrix over the two-element field, 64 columns per word.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words() const { return words_; }

  std::span<std::uint64_t> row(std::size_t r) { return {data_.data() + r * words_, words_}; }
  std::span<const std::uint64_t> row(std::size_t r) const { return {data_.data() + r * words_, words_}; }

  bool get(std::size_t r, std::size_t c) const { return data_[r * words_ + c / 64] >> (c % 64) & 1; }
  void set(std::size_t r, std::size_t c, bool v) {
    auto& w = data_[r * words_ + c / 64];
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    w = v ? (w | bit) : (w & ~bit);
  }
  void flip(std::size_t r, std::size_t c) { data_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

  bool operator==(const BitMatrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Rank by row reduction; the matrix is taken by value and destroyed.
std::size_t gf2_rank(BitMatrix m);

/// Incremental solver for sparse parity equations. Pivot rows are kept in
/// reduced row echelon form, so reducing a k-term equation costs at most k
/// row operations. Pivots are the lowest surviving column, which makes the
/// result a function of the equation order alone.
class Gf2System {
 public:
  explicit Gf2System(std::size_t num_vars);

  /// XOR of the listed variables equals rhs. Repeated variables cancel.
  void add_equation(std::span<const std::uint32_t> vars, bool rhs);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t rank() const { return pivot_cols_.size(); }
  bool consistent() const { return consistent_; }
  /// Particular solution with every free variable set to zero.
  std::vector<std::uint8_t> solution() const;

 private:
  std::size_t num_vars_, words_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint8_t> rhs_;
  std::vector<std::size_t> pivot_cols_;
  std::vector<std::int64_t> pivot_row_of_col_;
  std::vector<std::uint64_t> scratch_;
  bool consistent_ = true;
};

}  // namespace gridhfl
