#include "gridhfl/signs.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <exception>

#include "gridhfl/gf2.hpp"
#include "gridhfl/parallel.hpp"

namespace gridhfl {

std::string WeakClass::label() const {
  std::string out;
  for (size_t i = 0; i < r.size(); ++i) {
    if (i) out += ',';
    out += r[i] > 0 ? '+' : '-';
  }
  return out;
}

std::uint64_t TwoCochain::mask(int n) const {
  std::uint64_t m = 0;
  for (auto [r, c] : flip) m |= std::uint64_t{1} << (r * n + c);
  return m;
}

SignAssignment::SignAssignment(TablePtr table, std::vector<std::int8_t> values)
    : table_(std::move(table)), values_(std::move(values)) {}

int SignAssignment::at(const Rectangle& r) const {
  const auto gen = table_->generators().index_of(r.from);
  return values_[table_->slot_id(gen, r.row_bl, r.row_tr)];
}

TablePtr make_table(const GridDiagram& g, int cap) { return std::make_shared<const RectangleTable>(g, cap); }

bool satisfies_parity(const HVProfile& t) {
  const auto v_plus = std::count(t.v.begin(), t.v.end(), 1);
  const auto h_minus = std::count(t.h.begin(), t.h.end(), -1);
  return (v_plus - h_minus) % 2 == 0;
}

namespace {

struct Equation {
  std::uint32_t vars[4];
  std::uint8_t size;
  bool rhs;
};

int annulus_of(const RectangleTable& table, std::uint64_t ones, Annulus& kind) {
  for (int i = 0; i < table.n(); ++i) {
    if (ones == table.row_mask(i)) {
      kind = Annulus::Horizontal;
      return i;
    }
    if (ones == table.col_mask(i)) {
      kind = Annulus::Vertical;
      return i;
    }
  }
  throw Error(ErrorKind::StructureViolation, "closed index-two domain is not an annulus");
}

// One parity equation per decomposition group: four-term groups must multiply
// to -1, annulus groups to the requested h or v value. With `target` unset the
// annulus groups are skipped.
std::vector<Equation> assemble(const RectangleTable& table, const HVProfile* target, unsigned jobs = 0) {
  const std::size_t gens = table.generators().size();
  std::vector<std::vector<Equation>> parts(std::max(1u, jobs ? jobs : default_jobs()));
  std::vector<std::exception_ptr> errors(parts.size());
  parallel_chunks(gens, static_cast<unsigned>(parts.size()), [&](std::size_t begin, std::size_t end, std::size_t k) {
    try {
      auto& out = parts[k];
      for (std::size_t gen = begin; gen < end; ++gen) {
        for (const auto& group : slot_groups_from(table, gen)) {
          Equation eq{};
          if (group.end == gen) {
            if (!target) continue;
            Annulus kind;
            const int i = annulus_of(table, group.ones, kind);
            const int want = kind == Annulus::Horizontal ? target->h[i] : target->v[i];
            eq.vars[0] = group.pairs[0].first;
            eq.vars[1] = group.pairs[0].second;
            eq.size = 2;
            eq.rhs = want < 0;
          } else {
            eq.vars[0] = group.pairs[0].first;
            eq.vars[1] = group.pairs[0].second;
            eq.vars[2] = group.pairs[1].first;
            eq.vars[3] = group.pairs[1].second;
            eq.size = 4;
            eq.rhs = true;
          }
          out.push_back(eq);
        }
      }
    } catch (...) {
      errors[k] = std::current_exception();
    }
  });
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Equation> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

std::vector<std::int8_t> bits_to_signs(const RectangleTable& table, const std::vector<std::int8_t>& bits) {
  std::vector<std::int8_t> values(table.slot_count(), 0);
  for (std::size_t id = 0; id < values.size(); ++id) {
    if (table.slot(id).valid) values[id] = bits[id] ? -1 : 1;
  }
  return values;
}

void check_target_shape(const RectangleTable& table, const HVProfile& t) {
  const auto n = static_cast<std::size_t>(table.n());
  if (t.h.size() != n || t.v.size() != n) {
    throw Error(ErrorKind::IndexOutOfRange, "target profile must have N entries in h and v");
  }
  for (auto vals : {&t.h, &t.v}) {
    for (int x : *vals) {
      if (x != 1 && x != -1) throw Error(ErrorKind::SyntaxError, "profile values must be +1 or -1");
    }
  }
}

}  // namespace

// Every solution for a fixed profile lies in one gauge orbit, so fixing the
// signs of a spanning tree of the generator graph to +1 leaves exactly one
// solution. Unit propagation settles most variables; whatever remains goes
// through dense elimination.
SignAssignment solve_signs(const TablePtr& table_ptr, const HVProfile& target, SolveStats* stats, unsigned jobs) {
  const RectangleTable& table = *table_ptr;
  check_target_shape(table, target);
  if (!satisfies_parity(target)) {
    throw Error(ErrorKind::ParityViolation,
                "|v^-1(1)| and |h^-1(-1)| must have the same parity for a sign assignment to exist");
  }
  const std::size_t num_slots = table.slot_count();
  const std::size_t gens = table.generators().size();
  std::vector<std::int8_t> value(num_slots, -1);
  SolveStats local;
  local.variables = table.valid_count();

  // Breadth-first spanning tree from the identity, edges in slot order.
  {
    std::vector<std::vector<std::uint32_t>> adj(gens);
    for (std::size_t id = 0; id < num_slots; ++id) {
      const RectSlot& s = table.slot(id);
      if (!s.valid) continue;
      adj[table.source_of(id)].push_back(static_cast<std::uint32_t>(id));
      adj[s.to].push_back(static_cast<std::uint32_t>(id));
    }
    std::vector<char> seen(gens, 0);
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (auto id : adj[u]) {
        const std::size_t w = table.source_of(id) == u ? table.slot(id).to : table.source_of(id);
        if (seen[w]) continue;
        seen[w] = 1;
        value[id] = 0;
        ++local.gauge_fixed;
        queue.push_back(w);
      }
    }
  }

  const auto eqs = assemble(table, &target, jobs);
  local.equations = eqs.size();

  std::vector<std::uint8_t> unknown(eqs.size(), 0), parity(eqs.size(), 0);
  std::vector<std::vector<std::uint32_t>> occurs(num_slots);
  std::vector<std::uint32_t> ready;
  for (std::uint32_t e = 0; e < eqs.size(); ++e) {
    for (int k = 0; k < eqs[e].size; ++k) {
      const auto v = eqs[e].vars[k];
      if (value[v] < 0) {
        ++unknown[e];
        occurs[v].push_back(e);
      } else {
        parity[e] ^= static_cast<std::uint8_t>(value[v]);
      }
    }
    if (unknown[e] == 1) ready.push_back(e);
  }

  auto assign = [&](std::uint32_t var, std::uint8_t bit) {
    value[var] = static_cast<std::int8_t>(bit);
    for (auto e : occurs[var]) {
      parity[e] ^= bit;
      if (--unknown[e] == 1) ready.push_back(e);
    }
  };
  auto propagate = [&] {
    while (!ready.empty()) {
      const auto e = ready.back();
      ready.pop_back();
      if (unknown[e] != 1) continue;
      for (int k = 0; k < eqs[e].size; ++k) {
        const auto v = eqs[e].vars[k];
        if (value[v] < 0) {
          assign(v, static_cast<std::uint8_t>(parity[e] ^ (eqs[e].rhs ? 1 : 0)));
          ++local.propagated;
          break;
        }
      }
    }
  };
  propagate();

  std::vector<std::uint32_t> residual;
  for (std::size_t id = 0; id < num_slots; ++id) {
    if (table.slot(id).valid && value[id] < 0) residual.push_back(static_cast<std::uint32_t>(id));
  }
  local.residual = residual.size();
  if (!residual.empty()) {
    std::vector<std::int64_t> local_index(num_slots, -1);
    for (std::size_t i = 0; i < residual.size(); ++i) local_index[residual[i]] = static_cast<std::int64_t>(i);
    Gf2System system(residual.size());
    std::vector<std::uint32_t> vars;
    for (std::size_t e = 0; e < eqs.size() && system.consistent(); ++e) {
      if (unknown[e] == 0) continue;
      vars.clear();
      for (int k = 0; k < eqs[e].size; ++k) {
        const auto v = eqs[e].vars[k];
        if (value[v] < 0) vars.push_back(static_cast<std::uint32_t>(local_index[v]));
      }
      system.add_equation(vars, (parity[e] ^ (eqs[e].rhs ? 1 : 0)) != 0);
    }
    if (!system.consistent()) throw Error(ErrorKind::Infeasible, "sign constraint system is inconsistent");
    const auto x = system.solution();
    for (std::size_t i = 0; i < residual.size(); ++i) assign(residual[i], x[i]);
  }

  for (std::size_t e = 0; e < eqs.size(); ++e) {
    std::uint8_t p = 0;
    for (int k = 0; k < eqs[e].size; ++k) p ^= static_cast<std::uint8_t>(value[eqs[e].vars[k]]);
    if (p != (eqs[e].rhs ? 1 : 0)) throw Error(ErrorKind::Infeasible, "solved signs violate a constraint");
  }
  if (stats) *stats = local;
  return SignAssignment(table_ptr, bits_to_signs(table, value));
}

SignAssignment solve_signs(const GridDiagram& g, const HVProfile& target) {
  return solve_signs(make_table(g), target);
}

HVProfile canonical_targets(const GridDiagram& g, const WeakClass& w) {
  if (static_cast<int>(w.r.size()) != g.num_components()) {
    throw Error(ErrorKind::IndexOutOfRange, "weak class needs one sign per link component");
  }
  int product = 1;
  for (int x : w.r) {
    if (x != 1 && x != -1) throw Error(ErrorKind::SyntaxError, "component signs must be +1 or -1");
    product *= x;
  }
  if (product != 1) throw Error(ErrorKind::ProductNotOne, "product of component signs must be +1");
  HVProfile p{std::vector<int>(g.n(), 1), std::vector<int>(g.n(), -1)};
  for (int i = 0; i < g.num_components(); ++i) {
    if (w.r[i] < 0) p.v[g.components()[i].min_col()] *= -1;
  }
  return p;
}

std::vector<WeakClass> all_weak_classes(const GridDiagram& g) {
  const int l = g.num_components();
  std::vector<WeakClass> out;
  for (std::uint32_t bits = 0; bits < (1u << (l - 1)); ++bits) {
    WeakClass w;
    int product = 1;
    for (int i = 0; i < l - 1; ++i) {
      // Most significant component first gives lexicographic order.
      const int s = (bits >> (l - 2 - i) & 1) ? -1 : 1;
      w.r.push_back(s);
      product *= s;
    }
    w.r.push_back(product);
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end(), [](const WeakClass& a, const WeakClass& b) {
    return std::lexicographical_compare(a.r.begin(), a.r.end(), b.r.begin(), b.r.end(),
                                        [](int x, int y) { return x > y; });
  });
  return out;
}

namespace {

HVProfile profile_at(const SignAssignment& s, std::size_t gen) {
  const auto& table = s.table();
  HVProfile p{std::vector<int>(table.n()), std::vector<int>(table.n())};
  for (int i = 0; i < table.n(); ++i) {
    auto [a, b] = annulus_slots(table, gen, Annulus::Horizontal, i);
    p.h[i] = s.at(a) * s.at(b);
    auto [c, d] = annulus_slots(table, gen, Annulus::Vertical, i);
    p.v[i] = s.at(c) * s.at(d);
  }
  return p;
}

}  // namespace

// Index-one grids have no rectangles; they report the baseline profile.
HVProfile hv_profile(const SignAssignment& s) {
  const auto& table = s.table();
  if (table.n() == 1) return HVProfile{{1}, {-1}};
  const HVProfile base = profile_at(s, 0);
  for (std::size_t gen = 1; gen < table.generators().size(); ++gen) {
    if (profile_at(s, gen) != base) {
      throw Error(ErrorKind::ProjectionViolation,
                  "annulus products at generator " + table.generators().generator(gen).word() +
                      " differ from those at the identity");
    }
  }
  return base;
}

WeakClass component_signs(const GridDiagram& g, const HVProfile& p) {
  WeakClass w;
  int product = 1;
  for (const auto& comp : g.components()) {
    int r = 1;
    for (int row : comp.rows) r *= p.h[row];
    for (int col : comp.cols) r *= -p.v[col];
    w.r.push_back(r);
    product *= r;
  }
  if (product != 1) throw Error(ErrorKind::ProductNotOne, "component signs do not multiply to +1");
  return w;
}

WeakClass component_signs(const SignAssignment& s) { return component_signs(s.grid(), hv_profile(s)); }

std::vector<int> phi(const HVProfile& p) {
  std::vector<int> out(p.h.begin(), p.h.end());
  out.insert(out.end(), p.v.begin(), p.v.end() - 1);
  return out;
}

std::vector<int> phi(const SignAssignment& s) { return phi(hv_profile(s)); }

SignAssignment modify_by_cochain(const SignAssignment& s, const TwoCochain& m) {
  const auto& table = s.table();
  const std::uint64_t mask = m.mask(table.n());
  auto values = s.values();
  for (std::size_t id = 0; id < values.size(); ++id) {
    if (table.slot(id).valid && (std::popcount(table.slot(id).cells & mask) & 1)) values[id] = -values[id];
  }
  return SignAssignment(s.table_ptr(), std::move(values));
}

SignAssignment gauge_transform(const SignAssignment& s, const std::vector<int>& t) {
  const auto& table = s.table();
  auto values = s.values();
  for (std::size_t id = 0; id < values.size(); ++id) {
    if (table.slot(id).valid) values[id] = static_cast<std::int8_t>(values[id] * t[table.source_of(id)] * t[table.slot(id).to]);
  }
  return SignAssignment(s.table_ptr(), std::move(values));
}

namespace {

void require_same_grid(const SignAssignment& a, const SignAssignment& b) {
  if (!(a.grid() == b.grid())) throw Error(ErrorKind::GridMismatch, "sign assignments live on different grids");
}

}  // namespace

// Propagates t along cover rectangles (the ones that do not wrap), then
// checks every rectangle.
std::optional<std::vector<int>> gauge_witness(const SignAssignment& s1, const SignAssignment& s2) {
  require_same_grid(s1, s2);
  const auto& table = s1.table();
  const std::size_t gens = table.generators().size();
  std::vector<std::vector<std::uint32_t>> adj(gens);
  for (std::size_t id = 0; id < table.slot_count(); ++id) {
    const RectSlot& s = table.slot(id);
    if (!s.valid || s.wraps_cols || s.wraps_rows) continue;
    adj[table.source_of(id)].push_back(static_cast<std::uint32_t>(id));
    adj[s.to].push_back(static_cast<std::uint32_t>(id));
  }
  std::vector<int> t(gens, 0);
  t[0] = 1;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (auto id : adj[u]) {
      const std::size_t w = table.source_of(id) == u ? table.slot(id).to : table.source_of(id);
      if (t[w]) continue;
      t[w] = t[u] * s1.at(id) * s2.at(id);
      queue.push_back(w);
    }
  }
  for (std::size_t id = 0; id < table.slot_count(); ++id) {
    const RectSlot& s = table.slot(id);
    if (!s.valid) continue;
    const int ta = t[table.source_of(id)], tb = t[s.to];
    if (ta == 0 || tb == 0) throw Error(ErrorKind::StructureViolation, "cover graph is disconnected");
    if (s1.at(id) != ta * tb * s2.at(id)) return std::nullopt;
  }
  return t;
}

std::optional<SignAssignment> weak_align(const SignAssignment& s1, const SignAssignment& s2) {
  require_same_grid(s1, s2);
  const auto p1 = hv_profile(s1), p2 = hv_profile(s2);
  const GridDiagram& g = s1.grid();
  if (component_signs(g, p1) != component_signs(g, p2)) return std::nullopt;

  // Unknowns: marked cells. Row i must see h1(i)h2(i), column j v1(j)v2(j).
  std::vector<std::pair<int, int>> cells;
  for (int r = 0; r < g.n(); ++r) {
    cells.emplace_back(r, g.x_col(r));
    if (g.o_col(r) != g.x_col(r)) cells.emplace_back(r, g.o_col(r));
  }
  std::sort(cells.begin(), cells.end());
  Gf2System system(cells.size());
  for (int i = 0; i < g.n(); ++i) {
    std::vector<std::uint32_t> in_row, in_col;
    for (std::uint32_t k = 0; k < cells.size(); ++k) {
      if (cells[k].first == i) in_row.push_back(k);
      if (cells[k].second == i) in_col.push_back(k);
    }
    system.add_equation(in_row, p1.h[i] != p2.h[i]);
    system.add_equation(in_col, p1.v[i] != p2.v[i]);
  }
  if (!system.consistent()) return std::nullopt;
  const auto x = system.solution();
  TwoCochain m;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (x[k]) m.flip.insert(cells[k]);
  }
  return modify_by_cochain(s1, m);
}

SignReport verify_sign_assignment(const SignAssignment& s) {
  SignReport report;
  const auto& table = s.table();
  const std::size_t gens = table.generators().size();
  auto note = [&](std::string msg) {
    if (report.messages.size() < 20) report.messages.push_back(std::move(msg));
  };
  if (table.n() == 1) return report;

  for (std::size_t gen = 0; gen < gens; ++gen) {
    for (const auto& group : slot_groups_from(table, gen)) {
      if (group.end == gen) continue;
      const auto [a, b] = group.pairs[0];
      const auto [c, d] = group.pairs[1];
      if (s.at(a) * s.at(b) != -s.at(c) * s.at(d)) {
        ++report.square_violations;
        note("square relation fails for " + table.key(a) + " + " + table.key(b) + " vs " + table.key(c) + " + " +
             table.key(d));
      }
    }
  }
  const HVProfile base = profile_at(s, 0);
  for (std::size_t gen = 1; gen < gens; ++gen) {
    const HVProfile p = profile_at(s, gen);
    for (int i = 0; i < table.n(); ++i) {
      if (p.h[i] != base.h[i] || p.v[i] != base.v[i]) {
        ++report.projection_violations;
        note("annulus product " + std::to_string(i + 1) + " at " + table.generators().generator(gen).word() +
             " differs from the identity");
      }
    }
  }
  int product = 1;
  for (int i = 0; i < table.n(); ++i) product *= base.h[i] * base.v[i];
  const int expected = table.n() % 2 ? -1 : 1;
  if (product != expected) {
    report.product_ok = false;
    note("product of h(i)v(i) is " + std::to_string(product) + ", expected " + std::to_string(expected));
  }
  return report;
}

SignCensus enumerate_sign_assignments(const GridDiagram& g) {
  if (g.n() > 3) throw Error(ErrorKind::SizeLimit, "sign assignment census is limited to N <= 3");
  if (g.n() == 1) return {0, 0};
  const auto table = make_table(g);
  std::vector<std::int64_t> index(table->slot_count(), -1);
  std::uint32_t vars = 0;
  for (std::size_t id = 0; id < table->slot_count(); ++id) {
    if (table->slot(id).valid) index[id] = vars++;
  }
  Gf2System system(vars);
  for (const auto& eq : assemble(*table, nullptr, 1)) {
    std::uint32_t local[4];
    for (int k = 0; k < eq.size; ++k) local[k] = static_cast<std::uint32_t>(index[eq.vars[k]]);
    system.add_equation(std::span<const std::uint32_t>(local, eq.size), eq.rhs);
  }
  if (!system.consistent()) throw Error(ErrorKind::Infeasible, "square relations admit no sign assignment");
  SignCensus census;
  census.log2_assignments = static_cast<int>(vars - system.rank());
  census.log2_gauge_classes = census.log2_assignments - static_cast<int>(table->generators().size() - 1);
  return census;
}

}  // namespace gridhfl
