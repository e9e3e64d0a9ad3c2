#pragma once

#include "reduction_lab/kernels.hpp"

namespace rlab::kernels::detail {

const KernelTable& scalar_kernels() noexcept;
#ifdef REDUCTION_LAB_HAVE_AVX2
const KernelTable& avx2_kernels() noexcept;
#endif

}  // namespace rlab::kernels::detail
