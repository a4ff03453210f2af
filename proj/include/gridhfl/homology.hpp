#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gridhfl/gf2.hpp"
#include "gridhfl/signs.hpp"

namespace gridhfl {

/// Dense integer matrix, row-major.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  IntMatrix(std::size_t r, std::size_t c, std::initializer_list<std::int64_t> values);
  std::int64_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::int64_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct SmithForm {
  std::vector<mpz_class> divisors;  // d1 | d2 | ... | d_rank, all positive
  std::size_t rank = 0;
};

/// Exact Smith normal form. Runs in checked 64-bit arithmetic and restarts
/// with GMP integers if an intermediate entry would overflow.
SmithForm smith_normal_form(const IntMatrix& m);
/// Always uses GMP integers.
SmithForm smith_normal_form_big(const IntMatrix& m);

/// Boundary block C_M -> C_{M-1} inside one Alexander bucket, stored by column.
struct BoundaryBlock {
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<std::pair<std::uint32_t, int>>> columns;  // (row, value), sorted by row

  IntMatrix dense() const;
  BitMatrix mod2() const;
  bool operator==(const BoundaryBlock&) const = default;
};

/// Same divisors as the dense routine. Unit pivots are eliminated on the
/// sparse columns first and only the remainder is densified.
SmithForm smith_normal_form(const BoundaryBlock& b);

struct AlexanderBucket {
  std::vector<int> a2;
  std::map<int, std::vector<std::uint32_t>> basis;  // Maslov degree -> generator indices
  std::map<int, BoundaryBlock> boundary;            // keyed by source degree M
};

struct SignedComplex {
  TablePtr table;
  std::vector<GradingVector> gradings;
  std::map<std::vector<int>, AlexanderBucket> buckets;
};

/// Assembles the complex from empty rectangles with coefficients s(R) and
/// checks d^2 = 0 (throws DSquaredNonzero).
SignedComplex build_complex(const SignAssignment& s);
/// Same complex with every rectangle counted +1; only meaningful mod 2.
SignedComplex build_unsigned_complex(const TablePtr& table);

/// Throws DSquaredNonzero when some composite boundary is nonzero over Z.
void check_d_squared(const SignedComplex& c);
/// True when both complexes agree block-for-block after reduction mod 2.
bool same_mod2(const SignedComplex& a, const SignedComplex& b);
/// Signed boundary lowers M by one and keeps A2; returns false otherwise.
bool gradings_respected(const SignedComplex& c);

struct HomologyGroup {
  std::vector<int> a2;
  int maslov = 0;
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;
  bool operator==(const HomologyGroup&) const = default;
};

/// Nonzero groups ordered by (a2, maslov).
struct HomologyTable {
  std::vector<HomologyGroup> groups;
  bool operator==(const HomologyTable&) const = default;
  std::size_t total_free() const;
  const HomologyGroup* find(const std::vector<int>& a2, int maslov) const;
};

HomologyTable homology_z(const SignedComplex& c, unsigned jobs = 0);
/// Ranks over F2 of the unsigned complex; free_rank holds the rank.
HomologyTable homology_f2(const TablePtr& table, unsigned jobs = 0);
HomologyTable homology_f2(const SignedComplex& c, unsigned jobs = 0);

/// Merges the Alexander slots into one slot holding their sum.
HomologyTable collapse_alexander(const HomologyTable& t);

struct Monomial {
  int maslov = 0;
  std::vector<int> a2;
  auto operator<=>(const Monomial&) const = default;
};

using PoincarePolynomial = std::map<Monomial, long>;

enum class PoincareMode { FreeRank, Field };

/// Coefficient at (M, A2): free rank in Z mode, rank in F2 mode.
PoincarePolynomial poincare(const HomologyTable& t, PoincareMode mode = PoincareMode::FreeRank);

/// Divides by prod_i (1 + q^-1 tau_i^-1)^(m_i - 1); nullopt if inexact or the
/// quotient has a negative coefficient.
std::optional<PoincarePolynomial> divide_q_factors(const PoincarePolynomial& p, const GridDiagram& g);
/// Divides by (1 + q^-1 tau_i^-1) once, tau_i acting on slot `component`.
std::optional<PoincarePolynomial> divide_q_factor(const PoincarePolynomial& p, int component);

long total_rank(const PoincarePolynomial& p);

/// Knot symmetry: coefficient at (M, A) equals the one at (M - 2A, -A).
bool knot_symmetric(const PoincarePolynomial& p);

}  // namespace gridhfl
