#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace hopfcoh::kernels {

// Row kernels for elimination over F_p with residues stored as uint32 in [0, p).
// All variants must agree bit-for-bit with the scalar one.
struct ModpKernels {
  const char* name;
  // dst[i] = (dst[i] + c * src[i]) mod p
  void (*axpy)(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::size_t n,
               std::uint32_t p);
  // x[i] = (c * x[i]) mod p
  void (*scale)(std::uint32_t* x, std::uint32_t c, std::size_t n, std::uint32_t p);
  // Largest modulus the vector path accepts; larger moduli fall back to scalar.
  std::uint32_t max_modulus;
};

const ModpKernels& scalar_kernels();
// nullptr when not compiled in or not supported by this CPU.
const ModpKernels* avx2_kernels();
const ModpKernels* neon_kernels();

// Selected once per process: the best supported variant unless
// HOPFCOH_ISA=scalar forces the reference path.
const ModpKernels& active_kernels();

inline void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
                     std::uint32_t c, std::uint32_t p) {
  const ModpKernels& k = active_kernels();
  const ModpKernels& use = p <= k.max_modulus ? k : scalar_kernels();
  use.axpy(dst.data(), src.data(), c, dst.size(), p);
}

inline void scale_mod(std::span<std::uint32_t> x, std::uint32_t c, std::uint32_t p) {
  const ModpKernels& k = active_kernels();
  const ModpKernels& use = p <= k.max_modulus ? k : scalar_kernels();
  use.scale(x.data(), c, x.size(), p);
}

}  // namespace hopfcoh::kernels
