#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "gridhfl/homology.hpp"

namespace gridhfl {

IntMatrix::IntMatrix(std::size_t r, std::size_t c, std::initializer_list<std::int64_t> values)
    : rows(r), cols(c), data(values) {
  data.resize(r * c, 0);
}

namespace {

struct Overflow {};

// Arithmetic policy: checked int64 or GMP.
struct Checked {
  using T = std::int64_t;
  static T abs(T a) {
    if (a == INT64_MIN) throw Overflow{};
    return a < 0 ? -a : a;
  }
  static T sub_mul(T a, T q, T b) {  // a - q*b
    T prod, out;
    if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &out)) throw Overflow{};
    return out;
  }
  static T add(T a, T b) {
    T out;
    if (__builtin_add_overflow(a, b, &out)) throw Overflow{};
    return out;
  }
  static T quot(T a, T b) { return a / b; }
  static bool is_zero(const T& a) { return a == 0; }
  static bool divides(const T& d, const T& a) { return a % d == 0; }
  static mpz_class to_mpz(T a) { return mpz_class(static_cast<long>(a)); }
};

struct Big {
  using T = mpz_class;
  static T abs(const T& a) { return ::abs(a); }
  static T sub_mul(const T& a, const T& q, const T& b) { return a - q * b; }
  static T add(const T& a, const T& b) { return a + b; }
  static T quot(const T& a, const T& b) {
    T q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  static bool is_zero(const T& a) { return sgn(a) == 0; }
  static bool divides(const T& d, const T& a) { return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0; }
  static mpz_class to_mpz(const T& a) { return a; }
};

// Pivot is the smallest nonzero |entry| of the trailing block, ties broken by
// lowest (row, col). Row and column of the pivot are cleared by repeated
// division; an entry of the trailing block not divisible by the pivot is
// folded into the pivot row so the divisor chain comes out in order.
template <class P>
SmithForm smith_impl(const IntMatrix& input) {
  using T = typename P::T;
  const std::size_t rows = input.rows, cols = input.cols;
  std::vector<T> a(rows * cols);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = T(static_cast<long>(input.data[i]));
  auto at = [&](std::size_t r, std::size_t c) -> T& { return a[r * cols + c]; };

  auto swap_rows = [&](std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    for (std::size_t c = 0; c < cols; ++c) std::swap(at(r1, c), at(r2, c));
  };
  auto swap_cols = [&](std::size_t c1, std::size_t c2) {
    if (c1 == c2) return;
    for (std::size_t r = 0; r < rows; ++r) std::swap(at(r, c1), at(r, c2));
  };

  SmithForm out;
  const std::size_t limit = std::min(rows, cols);
  for (std::size_t t = 0; t < limit; ++t) {
    bool found = false;
    std::size_t pr = 0, pc = 0;
    T best{};
    for (std::size_t r = t; r < rows; ++r) {
      for (std::size_t c = t; c < cols; ++c) {
        if (P::is_zero(at(r, c))) continue;
        T mag = P::abs(at(r, c));
        if (!found || mag < best) {
          found = true;
          best = mag;
          pr = r;
          pc = c;
        }
      }
    }
    if (!found) break;
    swap_rows(t, pr);
    swap_cols(t, pc);

    for (;;) {
      bool dirty = false;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (P::is_zero(at(r, t))) continue;
        const T q = P::quot(at(r, t), at(t, t));
        for (std::size_t c = t; c < cols; ++c) at(r, c) = P::sub_mul(at(r, c), q, at(t, c));
        if (!P::is_zero(at(r, t))) dirty = true;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (P::is_zero(at(t, c))) continue;
        const T q = P::quot(at(t, c), at(t, t));
        for (std::size_t r = t; r < rows; ++r) at(r, c) = P::sub_mul(at(r, c), q, at(r, t));
        if (!P::is_zero(at(t, c))) dirty = true;
      }
      if (dirty) {
        // A smaller remainder appeared in the pivot row or column.
        std::size_t br = t, bc = t;
        T mag = P::abs(at(t, t));
        for (std::size_t r = t + 1; r < rows; ++r) {
          if (!P::is_zero(at(r, t)) && P::abs(at(r, t)) < mag) {
            mag = P::abs(at(r, t));
            br = r;
            bc = t;
          }
        }
        for (std::size_t c = t + 1; c < cols; ++c) {
          if (!P::is_zero(at(t, c)) && P::abs(at(t, c)) < mag) {
            mag = P::abs(at(t, c));
            br = t;
            bc = c;
          }
        }
        swap_rows(t, br);
        swap_cols(t, bc);
        continue;
      }
      bool folded = false;
      for (std::size_t r = t + 1; r < rows && !folded; ++r) {
        for (std::size_t c = t + 1; c < cols; ++c) {
          if (!P::divides(at(t, t), at(r, c))) {
            for (std::size_t k = t; k < cols; ++k) at(t, k) = P::add(at(t, k), at(r, k));
            folded = true;
            break;
          }
        }
      }
      if (!folded) break;
    }
    out.divisors.push_back(P::to_mpz(P::abs(at(t, t))));
  }
  out.rank = out.divisors.size();

  // The folding step already yields a chain; this pass is a no-op then, and
  // keeps the output canonical if it were not.
  for (std::size_t i = 0; i < out.divisors.size(); ++i) {
    for (std::size_t j = i + 1; j < out.divisors.size(); ++j) {
      mpz_class g = gcd(out.divisors[i], out.divisors[j]);
      mpz_class l = out.divisors[i] / g * out.divisors[j];
      out.divisors[i] = g;
      out.divisors[j] = l;
    }
  }
  return out;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  try {
    return smith_impl<Checked>(m);
  } catch (const Overflow&) {
    return smith_impl<Big>(m);
  }
}

SmithForm smith_normal_form_big(const IntMatrix& m) { return smith_impl<Big>(m); }

}  // namespace gridhfl

namespace gridhfl {

namespace {

using SparseColumn = std::vector<std::pair<std::uint32_t, std::int64_t>>;

std::int64_t entry(const SparseColumn& col, std::uint32_t row) {
  auto it = std::lower_bound(col.begin(), col.end(), std::make_pair(row, INT64_MIN));
  return it != col.end() && it->first == row ? it->second : 0;
}

// target - factor * pivot, reporting rows that became nonzero.
SparseColumn axpy(const SparseColumn& target, std::int64_t factor, const SparseColumn& pivot,
                  std::vector<std::uint32_t>& created) {
  SparseColumn out;
  out.reserve(target.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < target.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < target.size() && target[i].first < pivot[j].first)) {
      out.push_back(target[i++]);
    } else if (i == target.size() || pivot[j].first < target[i].first) {
      out.emplace_back(pivot[j].first, Checked::sub_mul(0, factor, pivot[j].second));
      created.push_back(pivot[j].first);
      ++j;
    } else {
      const auto v = Checked::sub_mul(target[i].second, factor, pivot[j].second);
      if (v != 0) out.emplace_back(target[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

SmithForm sparse_smith(const BoundaryBlock& b) {
  std::vector<SparseColumn> cols(b.cols);
  std::vector<std::vector<std::uint32_t>> rows(b.rows);  // may hold stale column ids
  for (std::size_t c = 0; c < b.cols; ++c) {
    for (auto [r, v] : b.columns[c]) {
      if (v == 0) continue;
      cols[c].emplace_back(r, v);
      rows[r].push_back(static_cast<std::uint32_t>(c));
    }
  }

  std::vector<std::uint32_t> order(b.cols);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t x, std::uint32_t y) { return cols[x].size() < cols[y].size(); });

  std::size_t units = 0;
  std::vector<std::uint32_t> created;
  for (std::uint32_t c : order) {
    auto& col = cols[c];
    std::int64_t best_row = -1;
    std::size_t best_degree = SIZE_MAX;
    for (auto [r, v] : col) {
      if ((v == 1 || v == -1) && rows[r].size() < best_degree) {
        best_degree = rows[r].size();
        best_row = r;
      }
    }
    if (best_row < 0) continue;
    const auto r = static_cast<std::uint32_t>(best_row);
    const std::int64_t v = entry(col, r);
    auto others = std::move(rows[r]);
    std::sort(others.begin(), others.end());
    others.erase(std::unique(others.begin(), others.end()), others.end());
    for (std::uint32_t c2 : others) {
      if (c2 == c) continue;
      const std::int64_t w = entry(cols[c2], r);
      if (w == 0) continue;
      created.clear();
      cols[c2] = axpy(cols[c2], w * v, col, created);
      for (auto nr : created) rows[nr].push_back(c2);
    }
    // Row r is now zero outside column c, so row and column drop out.
    col.clear();
    rows[r].clear();
    ++units;
  }

  std::vector<std::uint32_t> live_cols;
  std::vector<std::int64_t> row_index(b.rows, -1);
  std::size_t live_rows = 0;
  for (std::uint32_t c = 0; c < b.cols; ++c) {
    if (cols[c].empty()) continue;
    live_cols.push_back(c);
    for (auto [r, v] : cols[c]) {
      if (row_index[r] < 0) row_index[r] = static_cast<std::int64_t>(live_rows++);
    }
  }
  SmithForm out;
  out.divisors.assign(units, mpz_class(1));
  if (!live_cols.empty()) {
    IntMatrix rest(live_rows, live_cols.size());
    for (std::size_t k = 0; k < live_cols.size(); ++k) {
      for (auto [r, v] : cols[live_cols[k]]) rest.at(row_index[r], k) = v;
    }
    auto tail = smith_normal_form(rest);
    for (auto& d : tail.divisors) out.divisors.push_back(std::move(d));
  }
  out.rank = out.divisors.size();
  return out;
}

}  // namespace

SmithForm smith_normal_form(const BoundaryBlock& b) {
  try {
    return sparse_smith(b);
  } catch (const Overflow&) {
    return smith_impl<Big>(b.dense());
  }
}

}  // namespace gridhfl
