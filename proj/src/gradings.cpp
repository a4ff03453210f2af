#include <algorithm>
#include <deque>
#include <map>

#include "gridhfl/combinatorics.hpp"

namespace gridhfl {

namespace {

struct Point {
  int x2, y2;  // doubled coordinates
};

// Pairs (a, b) with a strictly south-west of b.
long sw_pairs(const std::vector<Point>& a, const std::vector<Point>& b) {
  long count = 0;
  for (const auto& p : a) {
    for (const auto& q : b) count += (p.x2 < q.x2 && p.y2 < q.y2);
  }
  return count;
}

// 2 * J(a, b), always an integer.
long j2(const std::vector<Point>& a, const std::vector<Point>& b) { return sw_pairs(a, b) + sw_pairs(b, a); }

std::vector<Point> generator_points(const Generator& x) {
  std::vector<Point> pts;
  for (int r = 0; r < x.n(); ++r) pts.push_back({2 * x.sigma[r], 2 * r});
  return pts;
}

std::vector<Point> marking_points(const GridDiagram& g, bool x_markings, int component = -1) {
  std::vector<Point> pts;
  for (int r = 0; r < g.n(); ++r) {
    if (component >= 0 && g.component_of_row(r) != component) continue;
    const int c = x_markings ? g.x_col(r) : g.o_col(r);
    pts.push_back({2 * c + 1, 2 * r + 1});
  }
  return pts;
}

}  // namespace

GradingVector absolute_gradings(const GridDiagram& g, const Generator& x) {
  const auto gx = generator_points(x);
  const auto xs = marking_points(g, true);
  const auto os = marking_points(g, false);

  GradingVector out;
  const long m2 = j2(gx, gx) - 2 * j2(gx, os) + j2(os, os) + 2;
  if (m2 % 2 != 0) throw Error(ErrorKind::StructureViolation, "odd doubled Maslov grading");
  out.maslov = static_cast<int>(m2 / 2);

  for (int i = 0; i < g.num_components(); ++i) {
    const auto xi = marking_points(g, true, i);
    const auto oi = marking_points(g, false, i);
    const long num = 2 * (j2(gx, xi) - j2(gx, oi)) - (j2(xs, xi) - j2(xs, oi) + j2(os, xi) - j2(os, oi));
    if (num % 2 != 0) throw Error(ErrorKind::StructureViolation, "non-integral doubled Alexander grading");
    out.alexander2.push_back(static_cast<int>(num / 2) - (g.components()[i].m() - 1));
  }
  return out;
}

GradingVector gradings_of_domain(const GridDiagram& g, const Domain& d, int steps) {
  GradingVector out;
  out.alexander2.assign(g.num_components(), 0);
  long n_o = 0;
  for (int r = 0; r < g.n(); ++r) {
    const int comp = g.component_of_row(r);
    const int dx = d.at(r, g.x_col(r));
    const int dox = d.at(r, g.o_col(r));
    n_o += dox;
    out.alexander2[comp] += 2 * (dx - dox);
  }
  out.maslov = static_cast<int>(steps - 2 * n_o);
  return out;
}

namespace {

struct Step {
  Generator next;
  std::uint64_t cells;
  int sign;  // +1: rectangle runs along the step, -1: against it
};

// Forward rectangles first, then rectangles arriving at u, each in row order.
std::vector<Step> rectangle_neighbors(const GridDiagram& g, const Generator& u) {
  std::vector<Step> out;
  for (auto& r : rectangles_from(g, u)) out.push_back({r.to, r.cells, +1});
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Generator w = u;
      std::swap(w.sigma[i], w.sigma[j]);
      for (auto& r : rectangles_from(g, w)) {
        const bool moves_ij = (r.row_bl == i && r.row_tr == j) || (r.row_bl == j && r.row_tr == i);
        if (moves_ij) out.push_back({w, r.cells, -1});
      }
    }
  }
  return out;
}

void accumulate(Domain& d, std::uint64_t cells, int sign) {
  for (int b = 0; b < d.n * d.n; ++b) {
    if (cells >> b & 1) d.coeff[b] += sign;
  }
}

}  // namespace

ConnectingDomain connecting_domain(const GridDiagram& g, const Generator& x, const Generator& y) {
  ConnectingDomain result{Domain(g.n()), 0};
  if (x == y) return result;

  struct Link {
    Generator other;  // neighbour one step closer to the search root
    std::uint64_t cells;
    int sign;  // contribution when walking from x towards y
  };
  std::map<Generator, Link> from_x, from_y;
  from_x.emplace(x, Link{x, 0, 0});
  from_y.emplace(y, Link{y, 0, 0});
  std::vector<Generator> layer_x{x}, layer_y{y};
  std::optional<Generator> meet;

  while (!meet && (!layer_x.empty() || !layer_y.empty())) {
    const bool expand_x = !layer_x.empty() && (layer_y.empty() || layer_x.size() <= layer_y.size());
    auto& layer = expand_x ? layer_x : layer_y;
    auto& seen = expand_x ? from_x : from_y;
    auto& other = expand_x ? from_y : from_x;
    std::vector<Generator> next;
    for (const auto& u : layer) {
      for (auto& step : rectangle_neighbors(g, u)) {
        if (seen.contains(step.next)) continue;
        // Walking x -> y, an x-side edge runs u -> next, a y-side edge next -> u.
        const int sign = expand_x ? step.sign : -step.sign;
        seen.emplace(step.next, Link{u, step.cells, sign});
        if (other.contains(step.next)) {
          meet = step.next;
          break;
        }
        next.push_back(step.next);
      }
      if (meet) break;
    }
    layer = std::move(next);
  }
  if (!meet) throw Error(ErrorKind::StructureViolation, "rectangle graph is disconnected");

  for (Generator node = *meet; node != x;) {
    const Link& link = from_x.at(node);
    accumulate(result.domain, link.cells, link.sign);
    result.steps += link.sign;
    node = link.other;
  }
  for (Generator node = *meet; node != y;) {
    const Link& link = from_y.at(node);
    accumulate(result.domain, link.cells, link.sign);
    result.steps += link.sign;
    node = link.other;
  }
  return result;
}

GradingVector relative_gradings(const GridDiagram& g, const Generator& x, const Generator& y) {
  const auto path = connecting_domain(g, x, y);
  return gradings_of_domain(g, path.domain, path.steps);
}

std::vector<GradingVector> all_gradings(const RectangleTable& table) {
  std::vector<GradingVector> out;
  out.reserve(table.generators().size());
  for (std::size_t i = 0; i < table.generators().size(); ++i) {
    out.push_back(absolute_gradings(table.grid(), table.generators().generator(i)));
  }
  return out;
}

}  // namespace gridhfl
