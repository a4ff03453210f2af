#include <cstdlib>
#include <string>

#include "gridhfl/simd/bitops.hpp"

namespace gridhfl::simd {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(GRIDHFL_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(GRIDHFL_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const BitKernels& kernels_for(Isa isa) {
  if (!available(isa)) return scalar_kernels();
  switch (isa) {
#if defined(GRIDHFL_HAVE_AVX2)
    case Isa::Avx2: return avx2_kernels();
#endif
#if defined(GRIDHFL_HAVE_NEON)
    case Isa::Neon: return neon_kernels();
#endif
    default: return scalar_kernels();
  }
}

namespace {

const BitKernels& select() {
  if (const char* env = std::getenv("GRIDHFL_SIMD")) {
    const std::string want = env;
    if (want == "scalar") return scalar_kernels();
    if (want == "avx2") return kernels_for(Isa::Avx2);
    if (want == "neon") return kernels_for(Isa::Neon);
  }
  if (available(Isa::Avx2)) return kernels_for(Isa::Avx2);
  if (available(Isa::Neon)) return kernels_for(Isa::Neon);
  return scalar_kernels();
}

}  // namespace

const BitKernels& active() {
  static const BitKernels& chosen = select();
  return chosen;
}

}  // namespace gridhfl::simd
