#include <algorithm>
#include <exception>
#include <numeric>

#include "gridhfl/homology.hpp"
#include "gridhfl/parallel.hpp"

namespace gridhfl {

IntMatrix BoundaryBlock::dense() const {
  IntMatrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    for (auto [r, v] : columns[c]) m.at(r, c) = v;
  }
  return m;
}

BitMatrix BoundaryBlock::mod2() const {
  BitMatrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    for (auto [r, v] : columns[c]) {
      if (v % 2) m.set(r, c, true);
    }
  }
  return m;
}

namespace {

// Generic assembly; `coefficient(slot)` gives the contribution of an empty
// rectangle, entries are summed per (target, source).
template <class Coefficient>
SignedComplex assemble_complex(const TablePtr& table, Coefficient coefficient) {
  SignedComplex cx;
  cx.table = table;
  cx.gradings = all_gradings(*table);
  const std::size_t gens = table->generators().size();

  std::vector<std::size_t> position(gens);
  for (std::uint32_t gen = 0; gen < gens; ++gen) {
    const auto& gr = cx.gradings[gen];
    auto& bucket = cx.buckets[gr.alexander2];
    bucket.a2 = gr.alexander2;
    auto& basis = bucket.basis[gr.maslov];
    position[gen] = basis.size();
    basis.push_back(gen);
  }
  for (auto& [a2, bucket] : cx.buckets) {
    for (auto& [m, basis] : bucket.basis) {
      auto below = bucket.basis.find(m - 1);
      BoundaryBlock block;
      block.cols = basis.size();
      block.rows = below == bucket.basis.end() ? 0 : below->second.size();
      block.columns.resize(block.cols);
      bucket.boundary.emplace(m, std::move(block));
    }
  }

  const std::size_t pairs = table->pairs_per_generator();
  for (std::uint32_t gen = 0; gen < gens; ++gen) {
    const auto& gr = cx.gradings[gen];
    auto& bucket = cx.buckets.at(gr.alexander2);
    auto& block = bucket.boundary.at(gr.maslov);
    auto& column = block.columns[position[gen]];
    for (std::size_t id = gen * pairs; id < (gen + 1) * pairs; ++id) {
      const RectSlot& s = table->slot(id);
      if (!s.valid || !s.empty()) continue;
      const auto& target = cx.gradings[s.to];
      if (target.alexander2 != gr.alexander2 || target.maslov != gr.maslov - 1) {
        throw Error(ErrorKind::StructureViolation,
                    "empty rectangle " + table->key(id) + " does not lower Maslov grading by one");
      }
      const auto row = static_cast<std::uint32_t>(position[s.to]);
      auto it = std::lower_bound(column.begin(), column.end(), std::make_pair(row, INT32_MIN));
      if (it != column.end() && it->first == row) {
        it->second += coefficient(id);
      } else {
        column.insert(it, {row, coefficient(id)});
      }
    }
    std::erase_if(column, [](const auto& e) { return e.second == 0; });
  }
  return cx;
}

}  // namespace

SignedComplex build_complex(const SignAssignment& s) {
  auto cx = assemble_complex(s.table_ptr(), [&](std::size_t id) { return s.at(id); });
  check_d_squared(cx);
  return cx;
}

SignedComplex build_unsigned_complex(const TablePtr& table) {
  return assemble_complex(table, [](std::size_t) { return 1; });
}

void check_d_squared(const SignedComplex& c) {
  for (const auto& [a2, bucket] : c.buckets) {
    for (const auto& [m, upper] : bucket.boundary) {
      auto lower_it = bucket.boundary.find(m - 1);
      if (lower_it == bucket.boundary.end()) continue;
      const auto& lower = lower_it->second;
      std::vector<long> acc(lower.rows, 0);
      for (const auto& column : upper.columns) {
        std::fill(acc.begin(), acc.end(), 0);
        for (auto [mid, a] : column) {
          for (auto [row, b] : lower.columns[mid]) acc[row] += static_cast<long>(a) * b;
        }
        for (long v : acc) {
          if (v != 0) {
            throw Error(ErrorKind::DSquaredNonzero, "boundary squared is nonzero in Maslov degree " +
                                                        std::to_string(m) + " of an Alexander bucket");
          }
        }
      }
    }
  }
}

bool same_mod2(const SignedComplex& a, const SignedComplex& b) {
  if (a.buckets.size() != b.buckets.size()) return false;
  for (const auto& [a2, bucket] : a.buckets) {
    auto it = b.buckets.find(a2);
    if (it == b.buckets.end() || it->second.basis != bucket.basis) return false;
    for (const auto& [m, block] : bucket.boundary) {
      if (!(block.mod2() == it->second.boundary.at(m).mod2())) return false;
    }
  }
  return true;
}

bool gradings_respected(const SignedComplex& c) {
  for (const auto& [a2, bucket] : c.buckets) {
    for (const auto& [m, block] : bucket.boundary) {
      const auto& src = bucket.basis.at(m);
      auto below = bucket.basis.find(m - 1);
      for (std::size_t col = 0; col < block.cols; ++col) {
        if (c.gradings[src[col]].maslov != m || c.gradings[src[col]].alexander2 != a2) return false;
        for (auto [row, v] : block.columns[col]) {
          if (below == bucket.basis.end()) return false;
          const auto& gr = c.gradings[below->second[row]];
          if (gr.maslov != m - 1 || gr.alexander2 != a2) return false;
        }
      }
    }
  }
  return true;
}

std::size_t HomologyTable::total_free() const {
  std::size_t total = 0;
  for (const auto& g : groups) total += g.free_rank;
  return total;
}

const HomologyGroup* HomologyTable::find(const std::vector<int>& a2, int maslov) const {
  for (const auto& g : groups) {
    if (g.a2 == a2 && g.maslov == maslov) return &g;
  }
  return nullptr;
}

namespace {

struct BlockRanks {
  std::size_t rank = 0;
  std::vector<mpz_class> torsion;
};

template <class Ranker>
HomologyTable homology_with(const SignedComplex& c, unsigned jobs, Ranker ranker) {
  std::vector<const AlexanderBucket*> buckets;
  for (const auto& [a2, bucket] : c.buckets) buckets.push_back(&bucket);

  std::vector<std::vector<HomologyGroup>> per_bucket(buckets.size());
  std::vector<std::exception_ptr> errors(buckets.size());
  parallel_chunks(buckets.size(), jobs, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t b = begin; b < end; ++b) {
      try {
        const auto& bucket = *buckets[b];
        std::map<int, BlockRanks> ranks;
        for (const auto& [m, block] : bucket.boundary) ranks[m] = ranker(block);
        for (const auto& [m, basis] : bucket.basis) {
          HomologyGroup group;
          group.a2 = bucket.a2;
          group.maslov = m;
          const std::size_t out_rank = ranks.at(m).rank;
          auto above = ranks.find(m + 1);
          const std::size_t in_rank = above == ranks.end() ? 0 : above->second.rank;
          group.free_rank = basis.size() - out_rank - in_rank;
          if (above != ranks.end()) group.torsion = above->second.torsion;
          if (group.free_rank || !group.torsion.empty()) per_bucket[b].push_back(std::move(group));
        }
      } catch (...) {
        errors[b] = std::current_exception();
      }
    }
  });
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  HomologyTable table;
  for (auto& groups : per_bucket) {
    for (auto& g : groups) table.groups.push_back(std::move(g));
  }
  return table;
}

}  // namespace

HomologyTable homology_z(const SignedComplex& c, unsigned jobs) {
  return homology_with(c, jobs, [](const BoundaryBlock& block) {
    BlockRanks r;
    if (block.rows == 0 || block.cols == 0) return r;
    const auto snf = smith_normal_form(block);
    r.rank = snf.rank;
    for (const auto& d : snf.divisors) {
      if (d > 1) r.torsion.push_back(d);
    }
    return r;
  });
}

HomologyTable homology_f2(const SignedComplex& c, unsigned jobs) {
  return homology_with(c, jobs, [](const BoundaryBlock& block) {
    BlockRanks r;
    if (block.rows == 0 || block.cols == 0) return r;
    r.rank = gf2_rank(block.mod2());
    return r;
  });
}

HomologyTable homology_f2(const TablePtr& table, unsigned jobs) {
  return homology_f2(build_unsigned_complex(table), jobs);
}

HomologyTable collapse_alexander(const HomologyTable& t) {
  std::map<std::pair<int, int>, std::pair<std::size_t, std::vector<mpz_class>>> merged;
  for (const auto& g : t.groups) {
    const int a = std::accumulate(g.a2.begin(), g.a2.end(), 0);
    auto& slot = merged[{a, g.maslov}];
    slot.first += g.free_rank;
    slot.second.insert(slot.second.end(), g.torsion.begin(), g.torsion.end());
  }
  HomologyTable out;
  for (auto& [key, value] : merged) {
    HomologyGroup g;
    g.a2 = {key.first};
    g.maslov = key.second;
    g.free_rank = value.first;
    if (!value.second.empty()) {
      // Direct sum of cyclic groups back into a divisor chain.
      auto chain = value.second;
      for (std::size_t i = 0; i < chain.size(); ++i) {
        for (std::size_t j = i + 1; j < chain.size(); ++j) {
          mpz_class d = gcd(chain[i], chain[j]);
          mpz_class l = chain[i] / d * chain[j];
          chain[i] = d;
          chain[j] = l;
        }
      }
      for (auto& d : chain) {
        if (d > 1) g.torsion.push_back(d);
      }
    }
    out.groups.push_back(std::move(g));
  }
  return out;
}

}  // namespace gridhfl
