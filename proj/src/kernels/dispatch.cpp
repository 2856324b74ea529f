#include <cstdlib>
#include <string_view>

#include "hopfcoh/kernels/modp.hpp"

namespace hopfcoh::kernels {

namespace {

const ModpKernels& select() {
  const char* env = std::getenv("HOPFCOH_ISA");
  if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
  if (const ModpKernels* k = avx2_kernels()) return *k;
  if (const ModpKernels* k = neon_kernels()) return *k;
  return scalar_kernels();
}

}  // namespace

const ModpKernels& active_kernels() {
  static const ModpKernels& chosen = select();
  return chosen;
}

}  // namespace hopfcoh::kernels
