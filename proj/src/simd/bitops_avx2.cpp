#include <immintrin.h>

#include <bit>

#include "gridhfl/simd/bitops.hpp"

namespace gridhfl::simd {

namespace {

void xor_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 8 <= words; i += 8) {
    auto* d = reinterpret_cast<__m256i*>(dst + i);
    const auto* s = reinterpret_cast<const __m256i*>(src + i);
    __m256i d0 = _mm256_loadu_si256(d), d1 = _mm256_loadu_si256(d + 1);
    d0 = _mm256_xor_si256(d0, _mm256_loadu_si256(s));
    d1 = _mm256_xor_si256(d1, _mm256_loadu_si256(s + 1));
    _mm256_storeu_si256(d, d0);
    _mm256_storeu_si256(d + 1, d1);
  }
  for (; i + 4 <= words; i += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst + i);
    _mm256_storeu_si256(d, _mm256_xor_si256(_mm256_loadu_si256(d),
                                            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i))));
  }
  for (; i < words; ++i) dst[i] ^= src[i];
}

// AVX2 has no vector popcount; the nibble lookup (Mula) is the usual substitute.
std::size_t popcount(const std::uint64_t* words, std::size_t count) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3,
                                          1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
    const __m256i lo = _mm256_shuffle_epi8(lookup, _mm256_and_si256(v, low));
    const __m256i hi = _mm256_shuffle_epi8(lookup, _mm256_and_si256(_mm256_srli_epi16(v, 4), low));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(_mm256_add_epi8(lo, hi), _mm256_setzero_si256()));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < count; ++i) total += static_cast<std::size_t>(std::popcount(words[i]));
  return total;
}

std::ptrdiff_t find_first(const std::uint64_t* words, std::size_t count) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
    if (!_mm256_testz_si256(v, v)) break;
  }
  for (; i < count; ++i) {
    if (words[i]) return static_cast<std::ptrdiff_t>(i * 64 + std::countr_zero(words[i]));
  }
  return -1;
}

bool and_parity(const std::uint64_t* a, const std::uint64_t* b, std::size_t count) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    acc = _mm256_xor_si256(acc, _mm256_and_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i)),
                                                 _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i))));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t folded = lanes[0] ^ lanes[1] ^ lanes[2] ^ lanes[3];
  for (; i < count; ++i) folded ^= a[i] & b[i];
  return std::popcount(folded) & 1;
}

}  // namespace

const BitKernels& avx2_kernels() {
  static const BitKernels k{Isa::Avx2, xor_into, popcount, find_first, and_parity};
  return k;
}

}  // namespace gridhfl::simd
