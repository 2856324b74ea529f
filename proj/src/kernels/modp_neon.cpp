#include <cstdint>

#include "hopfcoh/kernels/modp.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace hopfcoh::kernels {

namespace {

constexpr std::uint32_t kNeonMaxModulus = (1u << 26) - 1;

inline float64x2_t mulmod2(float64x2_t a, float64x2_t b, float64x2_t p, float64x2_t pinv) {
  float64x2_t prod = vmulq_f64(a, b);
  float64x2_t q = vrndmq_f64(vmulq_f64(prod, pinv));
  float64x2_t r = vfmsq_f64(prod, q, p);
  float64x2_t zero = vdupq_n_f64(0.0);
  r = vbslq_f64(vcltq_f64(r, zero), vaddq_f64(r, p), r);
  r = vbslq_f64(vcgeq_f64(r, p), vsubq_f64(r, p), r);
  return r;
}

inline float64x2_t load2(const std::uint32_t* x) {
  return vcvtq_f64_u64(vmovl_u32(vld1_u32(x)));
}

inline void store2(std::uint32_t* x, float64x2_t v) {
  vst1_u32(x, vmovn_u64(vcvtq_u64_f64(v)));
}

void axpy_neon(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::size_t n,
               std::uint32_t p) {
  if (c == 0) return;
  const float64x2_t vp = vdupq_n_f64(static_cast<double>(p));
  const float64x2_t vpinv = vdupq_n_f64(1.0 / static_cast<double>(p));
  const float64x2_t vc = vdupq_n_f64(static_cast<double>(c));
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t r = vaddq_f64(mulmod2(load2(src + i), vc, vp, vpinv), load2(dst + i));
    r = vbslq_f64(vcgeq_f64(r, vp), vsubq_f64(r, vp), r);
    store2(dst + i, r);
  }
  for (; i < n; ++i) {
    std::uint64_t v = dst[i] + static_cast<std::uint64_t>(c) * src[i] % p;
    dst[i] = static_cast<std::uint32_t>(v >= p ? v - p : v);
  }
}

void scale_neon(std::uint32_t* x, std::uint32_t c, std::size_t n, std::uint32_t p) {
  const float64x2_t vp = vdupq_n_f64(static_cast<double>(p));
  const float64x2_t vpinv = vdupq_n_f64(1.0 / static_cast<double>(p));
  const float64x2_t vc = vdupq_n_f64(static_cast<double>(c));
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(x + i, mulmod2(load2(x + i), vc, vp, vpinv));
  for (; i < n; ++i) x[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * x[i] % p);
}

}  // namespace

const ModpKernels* neon_kernels() {
  static const ModpKernels k{"neon", axpy_neon, scale_neon, kNeonMaxModulus};
  return &k;
}

}  // namespace hopfcoh::kernels

#else

namespace hopfcoh::kernels {
const ModpKernels* neon_kernels() { return nullptr; }
}  // namespace hopfcoh::kernels

#endif
