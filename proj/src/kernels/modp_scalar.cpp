#include <cstdint>

#include "hopfcoh/kernels/modp.hpp"

namespace hopfcoh::kernels {

namespace {

void axpy_scalar(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::size_t n,
                 std::uint32_t p) {
  if (c == 0) return;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t v = dst[i] + static_cast<std::uint64_t>(c) * src[i] % p;
    dst[i] = static_cast<std::uint32_t>(v >= p ? v - p : v);
  }
}

void scale_scalar(std::uint32_t* x, std::uint32_t c, std::size_t n, std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * x[i] % p);
}

}  // namespace

const ModpKernels& scalar_kernels() {
  static const ModpKernels k{"scalar", axpy_scalar, scale_scalar, UINT32_MAX};
  return k;
}

}  // namespace hopfcoh::kernels
