#include "cyclalg/kernels.hpp"

#include <immintrin.h>

#include <cstdlib>
#include <cstring>

namespace cyclalg::kernels {
namespace {

std::uint64_t mul_scalar(std::uint32_t a, std::uint32_t b) {
  std::uint64_t acc = 0, sa = a;
  while (b) {
    if (b & 1u) acc ^= sa;
    sa <<= 1;
    b >>= 1;
  }
  return acc;
}

std::uint64_t dot_rev_scalar(const std::uint32_t* a, const std::uint32_t* b_end, std::size_t n) {
  std::uint64_t acc = 0;
  for (std::size_t s = 0; s < n; ++s) acc ^= mul_scalar(a[s], *(b_end - s));
  return acc;
}

__attribute__((target("pclmul,sse4.1"))) std::uint64_t mul_pclmul(std::uint32_t a, std::uint32_t b) {
  __m128i x = _mm_cvtsi32_si128(static_cast<int>(a));
  __m128i y = _mm_cvtsi32_si128(static_cast<int>(b));
  return static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_clmulepi64_si128(x, y, 0x00)));
}

__attribute__((target("pclmul,sse4.1"))) std::uint64_t dot_rev_pclmul(const std::uint32_t* a,
                                                                      const std::uint32_t* b_end,
                                                                      std::size_t n) {
  // Two products per step: lane 0 and lane 1 of each register.
  __m128i acc0 = _mm_setzero_si128(), acc1 = _mm_setzero_si128();
  std::size_t s = 0;
  for (; s + 2 <= n; s += 2) {
    __m128i x = _mm_set_epi64x(a[s + 1], a[s]);
    __m128i y = _mm_set_epi64x(*(b_end - s - 1), *(b_end - s));
    acc0 = _mm_xor_si128(acc0, _mm_clmulepi64_si128(x, y, 0x00));
    acc1 = _mm_xor_si128(acc1, _mm_clmulepi64_si128(x, y, 0x11));
  }
  if (s < n) {
    __m128i x = _mm_cvtsi32_si128(static_cast<int>(a[s]));
    __m128i y = _mm_cvtsi32_si128(static_cast<int>(*(b_end - s)));
    acc0 = _mm_xor_si128(acc0, _mm_clmulepi64_si128(x, y, 0x00));
  }
  return static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_xor_si128(acc0, acc1)));
}

const Gf2Kernels kScalar{"scalar", mul_scalar, dot_rev_scalar};
const Gf2Kernels kPclmul{"pclmul", mul_pclmul, dot_rev_pclmul};

}  // namespace

const Gf2Kernels& gf2_scalar() { return kScalar; }

bool pclmul_available() {
  static const bool ok = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("pclmul") && __builtin_cpu_supports("sse4.1");
  }();
  return ok;
}

const Gf2Kernels& gf2_pclmul() { return pclmul_available() ? kPclmul : kScalar; }

const Gf2Kernels& gf2_active() {
  static const Gf2Kernels* k = [] {
    const char* env = std::getenv("CYCLALG_KERNEL");
    if (env && std::strcmp(env, "scalar") == 0) return &kScalar;
    return &gf2_pclmul();
  }();
  return *k;
}

}  // namespace cyclalg::kernels
