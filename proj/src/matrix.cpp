#include "reduction_lab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reduction_lab/errors.hpp"
#include "reduction_lab/kernels.hpp"

namespace rlab {
namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw InvalidArgument(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()) + ")");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
  if (dim == 0) throw InvalidArgument("matrix dimension must be at least 1");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries) : dim_(dim), entries_(std::move(entries)) {
  if (dim == 0) throw InvalidArgument("matrix dimension must be at least 1");
  if (entries_.size() != dim * dim) {
    throw InvalidArgument("matrix of dimension " + std::to_string(dim) + " needs " + std::to_string(dim * dim) +
                          " entries, got " + std::to_string(entries_.size()));
  }
  if (!all_finite()) throw InvalidArgument("matrix entries must be finite");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) : dim_(rows.size()) {
  if (dim_ == 0) throw InvalidArgument("matrix dimension must be at least 1");
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw InvalidArgument("matrix rows must all have length equal to the row count");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  if (!all_finite()) throw InvalidArgument("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<cplx> values) {
  return diagonal(std::span<const cplx>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::unit(std::size_t dim, std::size_t i, std::size_t j) {
  if (i >= dim || j >= dim) throw InvalidArgument("matrix unit index out of range");
  ComplexMatrix m(dim);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size()) throw InvalidArgument("outer: vector lengths differ");
  ComplexMatrix m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix r(*this);
  for (cplx& z : r.entries_) z = std::conj(z);
  return r;
}

cplx ComplexMatrix::trace() const noexcept {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

ComplexVector ComplexMatrix::column(std::size_t j) const {
  ComplexVector c(dim_);
  for (std::size_t i = 0; i < dim_; ++i) c[i] = (*this)(i, j);
  return c;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double ComplexMatrix::max_abs() const noexcept {
  double best = 0.0;
  for (const cplx& z : entries_) best = std::max(best, std::abs(z));
  return best;
}

double ComplexMatrix::frobenius_norm() const noexcept { return std::sqrt(kernels::active().sum_abs_sq(entries_)); }

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) { return add_scaled(1.0, other); }

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) { return add_scaled(-1.0, other); }

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) noexcept {
  for (cplx& z : entries_) z *= scalar;
  return *this;
}

ComplexMatrix& ComplexMatrix::add_scaled(cplx alpha, const ComplexMatrix& other) {
  require_same_dim(*this, other, "add");
  kernels::active().axpy(alpha, other.entries_, entries_);
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "multiply");
  ComplexMatrix c(a.dim());
  kernels::active().gemm(a.dim(), a.data(), b.data(), c.data());
  return c;
}

ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexVector operator*(const ComplexMatrix& a, std::span<const cplx> x) {
  if (x.size() != a.dim()) throw InvalidArgument("matrix-vector product: dimension mismatch");
  ComplexVector y(a.dim());
  kernels::active().gemv(a.dim(), a.dim(), a.data(), x, y);
  return y;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  return kernels::active().max_abs_diff(a.data(), b.data());
}

cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "trace_of_product");
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
  return t;
}

double vector_norm(std::span<const cplx> v) noexcept { return std::sqrt(kernels::active().sum_abs_sq(v)); }

cplx inner(std::span<const cplx> u, std::span<const cplx> v) noexcept {
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size() && i < v.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

}  // namespace rlab
