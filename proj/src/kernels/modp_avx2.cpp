#include <cstdint>

#include "hopfcoh/kernels/modp.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace hopfcoh::kernels {

namespace {

// Products of residues below 2^26 are exact in a double, so the quotient
// can be estimated in floating point and the remainder fixed up exactly
// with one FMA and two compares.
constexpr std::uint32_t kAvx2MaxModulus = (1u << 26) - 1;

__attribute__((target("avx2,fma"))) inline __m256d mulmod4(__m256d a, __m256d b, __m256d p,
                                                           __m256d pinv) {
  __m256d prod = _mm256_mul_pd(a, b);
  __m256d q = _mm256_floor_pd(_mm256_mul_pd(prod, pinv));
  __m256d r = _mm256_fnmadd_pd(q, p, prod);
  __m256d zero = _mm256_setzero_pd();
  r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), p));
  r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, p, _CMP_GE_OQ), p));
  return r;
}

__attribute__((target("avx2,fma"))) void axpy_avx2(std::uint32_t* dst, const std::uint32_t* src,
                                                   std::uint32_t c, std::size_t n,
                                                   std::uint32_t p) {
  if (c == 0) return;
  const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
  const __m256d vpinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  const __m256d vc = _mm256_set1_pd(static_cast<double>(c));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m128i s0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i));
    __m128i s1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i + 4));
    __m128i d0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i));
    __m128i d1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i + 4));
    __m256d r0 = mulmod4(_mm256_cvtepi32_pd(s0), vc, vp, vpinv);
    __m256d r1 = mulmod4(_mm256_cvtepi32_pd(s1), vc, vp, vpinv);
    r0 = _mm256_add_pd(r0, _mm256_cvtepi32_pd(d0));
    r1 = _mm256_add_pd(r1, _mm256_cvtepi32_pd(d1));
    r0 = _mm256_sub_pd(r0, _mm256_and_pd(_mm256_cmp_pd(r0, vp, _CMP_GE_OQ), vp));
    r1 = _mm256_sub_pd(r1, _mm256_and_pd(_mm256_cmp_pd(r1, vp, _CMP_GE_OQ), vp));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), _mm256_cvttpd_epi32(r0));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i + 4), _mm256_cvttpd_epi32(r1));
  }
  for (; i < n; ++i) {
    std::uint64_t v = dst[i] + static_cast<std::uint64_t>(c) * src[i] % p;
    dst[i] = static_cast<std::uint32_t>(v >= p ? v - p : v);
  }
}

__attribute__((target("avx2,fma"))) void scale_avx2(std::uint32_t* x, std::uint32_t c,
                                                    std::size_t n, std::uint32_t p) {
  const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
  const __m256d vpinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  const __m256d vc = _mm256_set1_pd(static_cast<double>(c));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(x + i));
    __m256d r = mulmod4(_mm256_cvtepi32_pd(s), vc, vp, vpinv);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(x + i), _mm256_cvttpd_epi32(r));
  }
  for (; i < n; ++i) x[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * x[i] % p);
}

}  // namespace

const ModpKernels* avx2_kernels() {
  static const ModpKernels k{"avx2", axpy_avx2, scale_avx2, kAvx2MaxModulus};
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? &k : nullptr;
}

}  // namespace hopfcoh::kernels

#else

namespace hopfcoh::kernels {
const ModpKernels* avx2_kernels() { return nullptr; }
}  // namespace hopfcoh::kernels

#endif
