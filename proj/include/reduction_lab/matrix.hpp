#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rlab {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

/// Dense square complex matrix, row-major. The carrier for states, projectors,
/// unitaries and superoperator representations alike.
///
/// Invariants: dim >= 1, all entries finite. Arithmetic goes through the
/// runtime-selected kernels in kernels.hpp.
class ComplexMatrix {
 public:
  /// Zero matrix.
  explicit ComplexMatrix(std::size_t dim);
  /// Row-major entries; throws InvalidArgument on size mismatch or non-finite values.
  ComplexMatrix(std::size_t dim, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const cplx> values);
  static ComplexMatrix diagonal(std::initializer_list<cplx> values);
  /// |i><j|
  static ComplexMatrix unit(std::size_t dim, std::size_t i, std::size_t j);
  /// |u><v|
  static ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return entries_.size(); }

  cplx& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * dim_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * dim_ + j]; }

  std::span<cplx> data() noexcept { return entries_; }
  std::span<const cplx> data() const noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  cplx trace() const noexcept;

  ComplexVector column(std::size_t j) const;

  bool all_finite() const noexcept;
  double max_abs() const noexcept;
  double frobenius_norm() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scalar) noexcept;
  /// this += alpha * other
  ComplexMatrix& add_scaled(cplx alpha, const ComplexMatrix& other);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<cplx> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexVector operator*(const ComplexMatrix& a, std::span<const cplx> x);

/// max_ij |a_ij - b_ij|; throws InvalidArgument on dimension mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr[a b] without forming the product.
cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

double vector_norm(std::span<const cplx> v) noexcept;
cplx inner(std::span<const cplx> u, std::span<const cplx> v) noexcept;  // <u|v>

}  // namespace rlab
