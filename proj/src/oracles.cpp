#include "gridhfl/oracles.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>

// Only for the values under test in grading_cross_check.
#include "gridhfl/combinatorics.hpp"

namespace gridhfl::oracles {

namespace {

using Perm = std::vector<int>;

struct Rect {
  Perm from, to;
  std::vector<int> cells;  // N*N indicator
};

std::vector<Perm> all_perms(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

bool strictly_inside(int value, int start, int length, int n) {
  const int offset = ((value - start) % n + n) % n;
  return offset > 0 && offset < length;
}

bool has_point(const Perm& p, int col, int row) { return p[row] == col; }

// Rectangles from x to y: both must differ in exactly two rows. The four
// candidates come from choosing which of the two columns starts the
// horizontal arc and which of the two rows starts the vertical arc.
std::vector<Rect> rectangles_between(const Perm& x, const Perm& y) {
  const int n = static_cast<int>(x.size());
  std::vector<int> diff;
  for (int r = 0; r < n; ++r) {
    if (x[r] != y[r]) diff.push_back(r);
  }
  std::vector<Rect> out;
  if (diff.size() != 2) return out;
  const int rows[2] = {diff[0], diff[1]};
  const int cols[2] = {x[diff[0]], x[diff[1]]};
  for (int hc = 0; hc < 2; ++hc) {
    for (int vr = 0; vr < 2; ++vr) {
      const int left = cols[hc], right = cols[1 - hc];
      const int bottom = rows[vr], top = rows[1 - vr];
      const int width = ((right - left) % n + n) % n;
      const int height = ((top - bottom) % n + n) % n;
      if (!has_point(x, left, bottom) || !has_point(x, right, top)) continue;
      if (!has_point(y, left, top) || !has_point(y, right, bottom)) continue;
      bool clean = true;
      for (int r = 0; r < n && clean; ++r) {
        for (const Perm* p : {&x, &y}) {
          if (strictly_inside(r, bottom, height, n) && strictly_inside((*p)[r], left, width, n)) clean = false;
        }
      }
      if (!clean) continue;
      Rect rect{x, y, std::vector<int>(n * n, 0)};
      for (int i = 0; i < height; ++i) {
        for (int j = 0; j < width; ++j) rect.cells[((bottom + i) % n) * n + (left + j) % n] = 1;
      }
      out.push_back(std::move(rect));
    }
  }
  return out;
}

std::vector<Rect> rectangles_out_of(const Perm& x) {
  const int n = static_cast<int>(x.size());
  std::vector<Rect> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Perm y = x;
      std::swap(y[i], y[j]);
      for (auto& r : rectangles_between(x, y)) out.push_back(std::move(r));
    }
  }
  return out;
}

int markings_in(const GridDiagram& g, const std::vector<int>& cells) {
  int count = 0;
  for (int r = 0; r < g.n(); ++r) {
    count += cells[r * g.n() + g.x_col(r)];
    count += cells[r * g.n() + g.o_col(r)];
  }
  return count;
}

// Dense GF(2) rank by plain Gaussian elimination on byte rows.
int naive_rank(std::vector<std::vector<char>> rows, int cols) {
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][c]) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[pivot], rows[rank]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r != rank && rows[r][c]) {
        for (int k = 0; k <= cols; ++k) rows[r][k] ^= rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

RectangleCensus exhaustive_rectangle_census(const GridDiagram& g) {
  if (g.n() > 5) throw Error(ErrorKind::SizeLimit, "rectangle census is limited to N <= 5");
  RectangleCensus census;
  const auto perms = all_perms(g.n());
  for (const auto& x : perms) {
    for (const auto& y : perms) {
      const auto rects = rectangles_between(x, y);
      census.total += rects.size();
      census.max_per_pair = std::max(census.max_per_pair, static_cast<int>(rects.size()));
      for (const auto& r : rects) census.empty += markings_in(g, r.cells) == 0;
    }
  }
  return census;
}

GaugeCensus gauge_class_census(const GridDiagram& g) {
  const int n = g.n();
  if (n < 2 || n > 3) throw Error(ErrorKind::SizeLimit, "gauge class census needs 2 <= N <= 3");
  const auto perms = all_perms(n);

  std::vector<Rect> rects;
  std::map<Perm, std::vector<int>> out_of;
  for (const auto& x : perms) {
    for (auto& r : rectangles_out_of(x)) {
      out_of[x].push_back(static_cast<int>(rects.size()));
      rects.push_back(std::move(r));
    }
  }
  const int vars = static_cast<int>(rects.size());

  // Group composites by (source, end, summed cells).
  std::map<std::tuple<Perm, Perm, std::vector<int>>, std::vector<std::pair<int, int>>> groups;
  for (const auto& x : perms) {
    for (int a : out_of[x]) {
      for (int b : out_of[rects[a].to]) {
        std::vector<int> sum(n * n);
        for (int k = 0; k < n * n; ++k) sum[k] = rects[a].cells[k] + rects[b].cells[k];
        groups[{x, rects[b].to, sum}].emplace_back(a, b);
      }
    }
  }

  std::vector<std::vector<char>> rows;
  // Per source: annulus pairs keyed by the annulus (0..N-1 rows, N..2N-1 columns).
  std::map<Perm, std::map<int, std::pair<int, int>>> annuli;
  for (const auto& [key, decs] : groups) {
    const auto& [x, y, sum] = key;
    if (x == y) {
      if (decs.size() != 1) throw Error(ErrorKind::StructureViolation, "annulus with several decompositions");
      int which = -1;
      for (int i = 0; i < n; ++i) {
        bool row = true, col = true;
        for (int r = 0; r < n; ++r) {
          for (int c = 0; c < n; ++c) {
            row = row && sum[r * n + c] == (r == i ? 1 : 0);
            col = col && sum[r * n + c] == (c == i ? 1 : 0);
          }
        }
        if (row) which = i;
        if (col) which = n + i;
      }
      if (which < 0) throw Error(ErrorKind::StructureViolation, "closed domain is not an annulus");
      annuli[x][which] = decs[0];
      continue;
    }
    if (decs.size() != 2) throw Error(ErrorKind::StructureViolation, "square group without two decompositions");
    std::vector<char> row(vars + 1, 0);
    for (auto [a, b] : decs) {
      row[a] ^= 1;
      row[b] ^= 1;
    }
    row[vars] = 1;
    rows.push_back(std::move(row));
  }

  // Reduce to a particular solution plus a null space basis.
  std::vector<std::vector<char>> m = rows;
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < vars && rank < static_cast<int>(m.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(m.size()); ++r) {
      if (m[r][c]) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[rank]);
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r != rank && m[r][c]) {
        for (int k = 0; k <= vars; ++k) m[r][k] ^= m[rank][k];
      }
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (int r = rank; r < static_cast<int>(m.size()); ++r) {
    if (m[r][vars]) throw Error(ErrorKind::Infeasible, "square relations are inconsistent");
  }
  if (rank != naive_rank(rows, vars)) throw Error(ErrorKind::StructureViolation, "rank mismatch");

  std::vector<char> is_pivot(vars, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<int> free_cols;
  for (int c = 0; c < vars; ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }

  GaugeCensus census;
  census.log2_solutions = static_cast<int>(free_cols.size());
  const int gauge_dim = static_cast<int>(perms.size()) - 1;
  census.gauge_classes = std::uint64_t{1} << (census.log2_solutions - gauge_dim);

  const Perm& base = perms.front();
  std::set<std::vector<int>> fingerprints;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_cols.size()); ++mask) {
    std::vector<char> bit(vars, 0);
    for (std::size_t k = 0; k < free_cols.size(); ++k) bit[free_cols[k]] = (mask >> k) & 1;
    for (int r = 0; r < rank; ++r) {
      char v = m[r][vars];
      for (int c : free_cols) v ^= m[r][c] & bit[c];
      bit[pivot_col[r]] = v;
    }
    std::vector<int> fp;
    for (int k = 0; k < 2 * n - 1; ++k) {
      auto [a, b] = annuli[base].at(k);
      fp.push_back((bit[a] ^ bit[b]) ? -1 : 1);
    }
    fingerprints.insert(fp);
  }
  census.distinct_fingerprints = fingerprints.size();
  return census;
}

namespace {

struct Edge {
  Perm next;
  std::vector<int> cells;
  int sign;
};

std::vector<Edge> neighbours(const Perm& u) {
  const int n = static_cast<int>(u.size());
  std::vector<Edge> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Perm w = u;
      std::swap(w[i], w[j]);
      for (auto& r : rectangles_between(u, w)) out.push_back({w, r.cells, +1});
      for (auto& r : rectangles_between(w, u)) out.push_back({w, r.cells, -1});
    }
  }
  return out;
}

// Breadth-first path with shuffled neighbour order; accumulates the signed
// domain and the signed step count.
void random_path(const Perm& from, const Perm& to, std::mt19937_64& rng, std::vector<int>& domain, int& steps) {
  if (from == to) return;
  std::map<Perm, std::pair<Perm, Edge>> parent;
  std::deque<Perm> queue{from};
  parent.emplace(from, std::make_pair(from, Edge{}));
  while (!queue.empty() && !parent.contains(to)) {
    Perm u = queue.front();
    queue.pop_front();
    auto edges = neighbours(u);
    std::shuffle(edges.begin(), edges.end(), rng);
    for (auto& e : edges) {
      if (parent.contains(e.next)) continue;
      parent.emplace(e.next, std::make_pair(u, e));
      queue.push_back(e.next);
    }
  }
  for (Perm node = to; node != from;) {
    const auto& [prev, edge] = parent.at(node);
    for (std::size_t k = 0; k < domain.size(); ++k) domain[k] += edge.sign * edge.cells[k];
    steps += edge.sign;
    node = prev;
  }
}

}  // namespace

GradingReport grading_cross_check(const GridDiagram& g, int paths_per_pair, std::uint64_t seed) {
  const int n = g.n();
  if (n > 4) throw Error(ErrorKind::SizeLimit, "grading cross-check is limited to N <= 4");
  GradingReport report;
  const auto perms = all_perms(n);
  std::vector<GradingVector> absolute;
  for (const auto& p : perms) absolute.push_back(absolute_gradings(g, Generator{p}));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);

  for (std::size_t i = 0; i < perms.size(); ++i) {
    for (std::size_t j = 0; j < perms.size(); ++j) {
      if (i == j) continue;
      ++report.pairs;
      for (int k = 0; k < paths_per_pair; ++k) {
        std::vector<int> domain(n * n, 0);
        int steps = 0;
        const auto& via = perms[pick(rng)];
        random_path(perms[i], via, rng, domain, steps);
        random_path(via, perms[j], rng, domain, steps);
        ++report.paths;

        int n_o = 0;
        std::vector<int> da2(g.num_components(), 0);
        for (int r = 0; r < n; ++r) {
          const int nx = domain[r * n + g.x_col(r)], no = domain[r * n + g.o_col(r)];
          n_o += no;
          da2[g.component_of_row(r)] += 2 * (nx - no);
        }
        const int dm = steps - 2 * n_o;
        std::vector<int> expect_a2(g.num_components());
        for (int c = 0; c < g.num_components(); ++c) {
          expect_a2[c] = absolute[i].alexander2[c] - absolute[j].alexander2[c];
        }
        if (dm != absolute[i].maslov - absolute[j].maslov || da2 != expect_a2) {
          if (report.failures.size() < 10) {
            report.failures.push_back("grading mismatch between generators " + std::to_string(i) + " and " +
                                      std::to_string(j));
          }
        }
      }
    }
  }
  return report;
}

}  // namespace gridhfl::oracles
