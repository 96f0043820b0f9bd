#include "kronsum/kernels.hpp"

// Used only when the build disables the AVX2 TU.

namespace kronsum::kernels {
const KernelTable* avx2_table() { return nullptr; }
} // namespace kronsum::kernels
