// Portable reference kernels. Complex products are spelled out in real
// arithmetic so that no libgcc __muldc3 call sits in the inner loop and so the
// operation order matches the vector variants.

#include <algorithm>
#include <cmath>

#include "kernels_internal.hpp"

namespace rlab::kernels::detail {
namespace {

void gemm(std::size_t n, std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> c) {
  std::fill(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n * n), cplx{});
  for (std::size_t i = 0; i < n; ++i) {
    cplx* crow = c.data() + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const double ar = a[i * n + k].real();
      const double ai = a[i * n + k].imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const cplx* brow = b.data() + k * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[j].real();
        const double bi = brow[j].imag();
        crow[j] = {crow[j].real() + (ar * br - ai * bi), crow[j].imag() + (ar * bi + ai * br)};
      }
    }
  }
}

void gemv(std::size_t rows, std::size_t cols, std::span<const cplx> a, std::span<const cplx> x,
          std::span<cplx> y) {
  for (std::size_t i = 0; i < rows; ++i) {
    double re = 0.0;
    double im = 0.0;
    const cplx* arow = a.data() + i * cols;
    for (std::size_t j = 0; j < cols; ++j) {
      re += arow[j].real() * x[j].real() - arow[j].imag() * x[j].imag();
      im += arow[j].real() * x[j].imag() + arow[j].imag() * x[j].real();
    }
    y[i] = {re, im};
  }
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
  }
}

double max_abs_diff(std::span<const cplx> x, std::span<const cplx> y) {
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dr = x[i].real() - y[i].real();
    const double di = x[i].imag() - y[i].imag();
    best = std::max(best, dr * dr + di * di);
  }
  return std::sqrt(best);
}

double sum_abs_sq(std::span<const cplx> x) {
  double acc = 0.0;
  for (const cplx& v : x) acc += v.real() * v.real() + v.imag() * v.imag();
  return acc;
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{Backend::Scalar, gemm, gemv, axpy, max_abs_diff, sum_abs_sq};
  return table;
}

}  // namespace rlab::kernels::detail
