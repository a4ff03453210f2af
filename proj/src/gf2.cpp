#include "gridhfl/gf2.hpp"

#include "gridhfl/simd/bitops.hpp"

namespace gridhfl {

std::size_t gf2_rank(BitMatrix m) {
  const auto& k = simd::active();
  std::size_t rank = 0;
  const std::size_t words = m.words();
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && !m.get(pivot, col)) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) {
      auto a = m.row(pivot), b = m.row(rank);
      for (std::size_t w = 0; w < words; ++w) std::swap(a[w], b[w]);
    }
    // Columns left of `col` are already clear below the pivot.
    const std::size_t first_word = col / 64;
    auto prow = m.row(rank);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (m.get(r, col)) k.xor_into(m.row(r).data() + first_word, prow.data() + first_word, words - first_word);
    }
    ++rank;
  }
  return rank;
}

Gf2System::Gf2System(std::size_t num_vars)
    : num_vars_(num_vars), words_((num_vars + 63) / 64), pivot_row_of_col_(num_vars, -1), scratch_(words_) {}

void Gf2System::add_equation(std::span<const std::uint32_t> vars, bool rhs) {
  const auto& k = simd::active();
  std::fill(scratch_.begin(), scratch_.end(), 0);
  for (auto v : vars) scratch_[v / 64] ^= std::uint64_t{1} << (v % 64);
  for (auto v : vars) {
    if (!(scratch_[v / 64] >> (v % 64) & 1)) continue;
    const auto prow = pivot_row_of_col_[v];
    if (prow < 0) continue;
    k.xor_into(scratch_.data(), rows_.data() + prow * words_, words_);
    rhs ^= rhs_[prow] != 0;
  }
  const auto lead = k.find_first(scratch_.data(), words_);
  if (lead < 0) {
    if (rhs) consistent_ = false;
    return;
  }
  const std::size_t col = static_cast<std::size_t>(lead);
  const std::size_t word = col / 64;
  const std::uint64_t bit = std::uint64_t{1} << (col % 64);
  for (std::size_t r = 0; r < pivot_cols_.size(); ++r) {
    std::uint64_t* row = rows_.data() + r * words_;
    if (row[word] & bit) {
      k.xor_into(row, scratch_.data(), words_);
      rhs_[r] ^= rhs ? 1 : 0;
    }
  }
  pivot_row_of_col_[col] = static_cast<std::int64_t>(pivot_cols_.size());
  pivot_cols_.push_back(col);
  rows_.insert(rows_.end(), scratch_.begin(), scratch_.end());
  rhs_.push_back(rhs ? 1 : 0);
}

std::vector<std::uint8_t> Gf2System::solution() const {
  std::vector<std::uint8_t> x(num_vars_, 0);
  for (std::size_t r = 0; r < pivot_cols_.size(); ++r) x[pivot_cols_[r]] = rhs_[r];
  return x;
}

}  // namespace gridhfl
