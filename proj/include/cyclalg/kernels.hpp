#pragma once

// Carry-less (GF(2)[X]) multiply kernels used by characteristic-2 towers.
// Results are unreduced: operands have degree < 32, products fit in 64 bits.

#include <cstddef>
#include <cstdint>

namespace cyclalg::kernels {

struct Gf2Kernels {
  const char* name;
  std::uint64_t (*mul)(std::uint32_t a, std::uint32_t b);
  // XOR of mul(a[s], b_end[-s]) for s < n: one term of a convolution.
  std::uint64_t (*dot_rev)(const std::uint32_t* a, const std::uint32_t* b_end, std::size_t n);
};

const Gf2Kernels& gf2_scalar();
// Falls back to the scalar table when the CPU lacks PCLMULQDQ.
const Gf2Kernels& gf2_pclmul();
bool pclmul_available();

// Picked once per process: PCLMULQDQ when available, unless the
// CYCLALG_KERNEL environment variable is set to "scalar".
const Gf2Kernels& gf2_active();

}  // namespace cyclalg::kernels
