#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Word-level kernels over packed GF(2) rows. Each instruction set provides the
// same table; the scalar one is the reference the others are tested against.

namespace gridhfl::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

struct BitKernels {
  Isa isa;
  /// dst ^= src
  void (*xor_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  std::size_t (*popcount)(const std::uint64_t* words, std::size_t count);
  /// Index of the lowest set bit, or -1 when all words are zero.
  std::ptrdiff_t (*find_first)(const std::uint64_t* words, std::size_t count);
  /// Parity of popcount(a & b).
  bool (*and_parity)(const std::uint64_t* a, const std::uint64_t* b, std::size_t count);
};

const BitKernels& scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
const BitKernels& avx2_kernels();
#endif
#if defined(__aarch64__)
const BitKernels& neon_kernels();
#endif

/// True when the variant is compiled in and the running CPU supports it.
bool available(Isa isa);
/// Kernels for `isa`; falls back to scalar when unavailable.
const BitKernels& kernels_for(Isa isa);

/// Best available variant, chosen once. GRIDHFL_SIMD=scalar|avx2|neon overrides.
const BitKernels& active();

inline void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  active().xor_into(dst.data(), src.data(), dst.size());
}
inline std::size_t popcount(std::span<const std::uint64_t> row) { return active().popcount(row.data(), row.size()); }
inline std::ptrdiff_t find_first(std::span<const std::uint64_t> row) {
  return active().find_first(row.data(), row.size());
}

}  // namespace gridhfl::simd
