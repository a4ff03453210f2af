#include <bit>

#include "gridhfl/simd/bitops.hpp"

namespace gridhfl::simd {

namespace {

void xor_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] ^= src[i];
}

std::size_t popcount(const std::uint64_t* words, std::size_t count) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < count; ++i) total += static_cast<std::size_t>(std::popcount(words[i]));
  return total;
}

std::ptrdiff_t find_first(const std::uint64_t* words, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    if (words[i]) return static_cast<std::ptrdiff_t>(i * 64 + std::countr_zero(words[i]));
  }
  return -1;
}

bool and_parity(const std::uint64_t* a, const std::uint64_t* b, std::size_t count) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < count; ++i) acc ^= a[i] & b[i];
  return std::popcount(acc) & 1;
}

}  // namespace

const BitKernels& scalar_kernels() {
  static const BitKernels k{Isa::Scalar, xor_into, popcount, find_first, and_parity};
  return k;
}

}  // namespace gridhfl::simd
