#pragma once

// Dense complex inner-loop kernels. Every routine has a portable scalar
// reference implementation; an AVX2/FMA variant is compiled on x86-64 and
// picked at runtime when the CPU supports it. Results of the two agree to a
// few ulps per accumulated term (FMA rounding and pairwise lane reductions).

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace rlab::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  Backend backend;
  /// c = a * b for row-major n x n matrices. `c` must not alias `a` or `b`.
  void (*gemm)(std::size_t n, std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> c);
  /// y = a * x for a row-major rows x cols matrix.
  void (*gemv)(std::size_t rows, std::size_t cols, std::span<const cplx> a, std::span<const cplx> x,
               std::span<cplx> y);
  /// y += alpha * x
  void (*axpy)(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
  /// max_i |x_i - y_i|
  double (*max_abs_diff)(std::span<const cplx> x, std::span<const cplx> y);
  /// sum_i |x_i|^2
  double (*sum_abs_sq)(std::span<const cplx> x);
};

const KernelTable& scalar_table() noexcept;

/// The AVX2 table, or nullptr when it was not compiled in.
const KernelTable* avx2_table() noexcept;

bool cpu_supports(Backend backend) noexcept;

/// Kernels currently in use. On first call honours REDUCTION_LAB_KERNELS
/// ("scalar" or "avx2"), otherwise takes the best supported backend.
const KernelTable& active() noexcept;
Backend active_backend() noexcept;

/// Throws rlab::InvalidArgument if the backend is unavailable on this machine.
void select_backend(Backend backend);

std::string_view backend_name(Backend backend) noexcept;

}  // namespace rlab::kernels
