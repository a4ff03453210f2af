#include <algorithm>

#include "gridhfl/homology.hpp"

namespace gridhfl {

PoincarePolynomial poincare(const HomologyTable& t, PoincareMode) {
  // Both modes read free_rank: F2 tables store the field rank there.
  PoincarePolynomial p;
  for (const auto& g : t.groups) {
    if (g.free_rank) p[Monomial{g.maslov, g.a2}] += static_cast<long>(g.free_rank);
  }
  return p;
}

long total_rank(const PoincarePolynomial& p) {
  long total = 0;
  for (const auto& [m, c] : p) total += c;
  return total;
}

// Long division by (1 + u), u = q^-1 tau_i^-1. The leading term is the one of
// highest Maslov degree; multiplying by u strictly lowers it, so the loop
// terminates once the remainder drops below the dividend's lowest degree.
std::optional<PoincarePolynomial> divide_q_factor(const PoincarePolynomial& p, int component) {
  if (p.empty()) return PoincarePolynomial{};
  int lowest = p.begin()->first.maslov;
  for (const auto& [m, c] : p) lowest = std::min(lowest, m.maslov);

  PoincarePolynomial remainder = p, quotient;
  while (!remainder.empty()) {
    auto lead = std::prev(remainder.end());
    if (lead->first.maslov < lowest) return std::nullopt;
    const Monomial term = lead->first;
    const long coeff = lead->second;
    if (component < 0 || component >= static_cast<int>(term.a2.size())) return std::nullopt;
    quotient[term] += coeff;
    remainder.erase(lead);
    Monomial shifted = term;
    shifted.maslov -= 1;
    shifted.a2[component] -= 2;
    auto& slot = remainder[shifted];
    slot -= coeff;
    if (slot == 0) remainder.erase(shifted);
  }
  for (const auto& [m, c] : quotient) {
    if (c < 0) return std::nullopt;
  }
  std::erase_if(quotient, [](const auto& e) { return e.second == 0; });
  return quotient;
}

std::optional<PoincarePolynomial> divide_q_factors(const PoincarePolynomial& p, const GridDiagram& g) {
  PoincarePolynomial current = p;
  for (int i = 0; i < g.num_components(); ++i) {
    for (int k = 1; k < g.components()[i].m(); ++k) {
      auto next = divide_q_factor(current, i);
      if (!next) return std::nullopt;
      current = std::move(*next);
    }
  }
  return current;
}

bool knot_symmetric(const PoincarePolynomial& p) {
  for (const auto& [m, c] : p) {
    if (m.a2.size() != 1) return false;
    const Monomial mirror{m.maslov - m.a2[0], {-m.a2[0]}};
    auto it = p.find(mirror);
    if (it == p.end() || it->second != c) return false;
  }
  return true;
}

}  // namespace gridhfl
