// AVX2/FMA variants. This file is the only one compiled with -mavx2 -mfma;
// nothing here may run unless dispatch confirmed CPU support.
//
// A __m256d holds two interleaved complex doubles [re0, im0, re1, im1].
// Complex multiply by a broadcast scalar (ar, ai):
//   prod = fmaddsub(ar, b, ai * swap(b))  ->  [ar*br - ai*bi, ar*bi + ai*br, ...]

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernels_internal.hpp"

namespace rlab::kernels::detail {
namespace {

inline __m256d cmul_broadcast(__m256d ar, __m256d ai, __m256d b) {
  const __m256d swapped = _mm256_permute_pd(b, 0b0101);
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, swapped));
}

void gemm(std::size_t n, std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> c) {
  std::fill(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n * n), cplx{});
  const std::size_t pairs = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    double* crow = reinterpret_cast<double*>(c.data() + i * n);
    for (std::size_t k = 0; k < n; ++k) {
      const double re = a[i * n + k].real();
      const double im = a[i * n + k].imag();
      if (re == 0.0 && im == 0.0) continue;
      const __m256d ar = _mm256_set1_pd(re);
      const __m256d ai = _mm256_set1_pd(im);
      const double* brow = reinterpret_cast<const double*>(b.data() + k * n);
      for (std::size_t p = 0; p < pairs; ++p) {
        const __m256d bv = _mm256_loadu_pd(brow + 4 * p);
        const __m256d cv = _mm256_loadu_pd(crow + 4 * p);
        _mm256_storeu_pd(crow + 4 * p, _mm256_add_pd(cv, cmul_broadcast(ar, ai, bv)));
      }
      if (n % 2 != 0) {
        const std::size_t j = n - 1;
        const double br = brow[2 * j];
        const double bi = brow[2 * j + 1];
        crow[2 * j] += re * br - im * bi;
        crow[2 * j + 1] += re * bi + im * br;
      }
    }
  }
}

void gemv(std::size_t rows, std::size_t cols, std::span<const cplx> a, std::span<const cplx> x,
          std::span<cplx> y) {
  // Accumulate x_j * a_ij with x_j broadcast; each lane pair holds a partial sum.
  const std::size_t pairs = cols / 2;
  for (std::size_t i = 0; i < rows; ++i) {
    const double* arow = reinterpret_cast<const double*>(a.data() + i * cols);
    const double* xv = reinterpret_cast<const double*>(x.data());
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t p = 0; p < pairs; ++p) {
      const __m256d av = _mm256_loadu_pd(arow + 4 * p);
      const __m256d xx = _mm256_loadu_pd(xv + 4 * p);
      // [xr0, xr0, xr1, xr1] and [xi0, xi0, xi1, xi1]
      const __m256d xr = _mm256_movedup_pd(xx);
      const __m256d xi = _mm256_permute_pd(xx, 0b1111);
      acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(xr, av, _mm256_mul_pd(xi, _mm256_permute_pd(av, 0b0101))));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double re = lanes[0] + lanes[2];
    double im = lanes[1] + lanes[3];
    if (cols % 2 != 0) {
      const std::size_t j = cols - 1;
      re += arow[2 * j] * xv[2 * j] - arow[2 * j + 1] * xv[2 * j + 1];
      im += arow[2 * j] * xv[2 * j + 1] + arow[2 * j + 1] * xv[2 * j];
    }
    y[i] = {re, im};
  }
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const double* xs = reinterpret_cast<const double*>(x.data());
  double* ys = reinterpret_cast<double*>(y.data());
  const std::size_t pairs = x.size() / 2;
  for (std::size_t p = 0; p < pairs; ++p) {
    const __m256d xv = _mm256_loadu_pd(xs + 4 * p);
    const __m256d yv = _mm256_loadu_pd(ys + 4 * p);
    _mm256_storeu_pd(ys + 4 * p, _mm256_add_pd(yv, cmul_broadcast(ar, ai, xv)));
  }
  if (x.size() % 2 != 0) {
    const std::size_t i = x.size() - 1;
    const double xr = x[i].real();
    const double xi = x[i].imag();
    y[i] = {y[i].real() + (alpha.real() * xr - alpha.imag() * xi),
            y[i].imag() + (alpha.real() * xi + alpha.imag() * xr)};
  }
}

double max_abs_diff(std::span<const cplx> x, std::span<const cplx> y) {
  const double* xs = reinterpret_cast<const double*>(x.data());
  const double* ys = reinterpret_cast<const double*>(y.data());
  __m256d best = _mm256_setzero_pd();
  const std::size_t pairs = x.size() / 2;
  for (std::size_t p = 0; p < pairs; ++p) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(xs + 4 * p), _mm256_loadu_pd(ys + 4 * p));
    const __m256d sq = _mm256_mul_pd(d, d);
    // hadd within 128-bit lanes: [|z0|^2, |z0|^2, |z1|^2, |z1|^2]
    best = _mm256_max_pd(best, _mm256_hadd_pd(sq, sq));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double m = std::max(lanes[0], lanes[2]);
  if (x.size() % 2 != 0) {
    const std::size_t i = x.size() - 1;
    const double dr = x[i].real() - y[i].real();
    const double di = x[i].imag() - y[i].imag();
    m = std::max(m, dr * dr + di * di);
  }
  return std::sqrt(m);
}

double sum_abs_sq(std::span<const cplx> x) {
  const double* xs = reinterpret_cast<const double*>(x.data());
  __m256d acc = _mm256_setzero_pd();
  const std::size_t quads = (2 * x.size()) / 4;
  for (std::size_t q = 0; q < quads; ++q) {
    const __m256d v = _mm256_loadu_pd(xs + 4 * q);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (std::size_t r = 4 * quads; r < 2 * x.size(); ++r) total += xs[r] * xs[r];
  return total;
}

}  // namespace

const KernelTable& avx2_kernels() noexcept {
  static const KernelTable table{Backend::Avx2, gemm, gemv, axpy, max_abs_diff, sum_abs_sq};
  return table;
}

}  // namespace rlab::kernels::detail
