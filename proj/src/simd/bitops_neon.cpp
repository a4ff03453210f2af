#include <arm_neon.h>

#include <bit>

#include "gridhfl/simd/bitops.hpp"

namespace gridhfl::simd {

namespace {

void xor_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) vst1q_u64(dst + i, veorq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  for (; i < words; ++i) dst[i] ^= src[i];
}

std::size_t popcount(const std::uint64_t* words, std::size_t count) {
  std::size_t total = 0, i = 0;
  for (; i + 2 <= count; i += 2) {
    const uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(vld1q_u64(words + i)));
    total += vaddvq_u8(bytes);
  }
  for (; i < count; ++i) total += static_cast<std::size_t>(std::popcount(words[i]));
  return total;
}

std::ptrdiff_t find_first(const std::uint64_t* words, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    if (words[i]) return static_cast<std::ptrdiff_t>(i * 64 + std::countr_zero(words[i]));
  }
  return -1;
}

bool and_parity(const std::uint64_t* a, const std::uint64_t* b, std::size_t count) {
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) acc = veorq_u64(acc, vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  std::uint64_t folded = vgetq_lane_u64(acc, 0) ^ vgetq_lane_u64(acc, 1);
  for (; i < count; ++i) folded ^= a[i] & b[i];
  return std::popcount(folded) & 1;
}

}  // namespace

const BitKernels& neon_kernels() {
  static const BitKernels k{Isa::Neon, xor_into, popcount, find_first, and_parity};
  return k;
}

}  // namespace gridhfl::simd
