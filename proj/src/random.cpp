#include "reduction_lab/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "reduction_lab/errors.hpp"

namespace rlab {
namespace {

constexpr double kDependenceTol = 1e-10;

void project_out(ComplexVector& v, const ComplexVector& basis_vector) {
  const cplx c = inner(basis_vector, v);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * basis_vector[i];
}

void normalize(ComplexVector& v) {
  const double n = vector_norm(v);
  for (cplx& z : v) z /= n;
}

}  // namespace

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  constexpr double kScale = 1.0 / std::numbers::sqrt2;
  return {re * kScale, im * kScale};
}

ComplexVector random_vector(std::size_t dim, Rng& rng) {
  ComplexVector v(dim);
  for (cplx& z : v) z = rng.complex_normal();
  return v;
}

ComplexVector random_unit_vector(std::size_t dim, Rng& rng) {
  ComplexVector v = random_vector(dim, rng);
  normalize(v);
  return v;
}

ComplexMatrix random_matrix(std::size_t dim, Rng& rng) {
  ComplexMatrix m(dim);
  for (cplx& z : m.data()) z = rng.complex_normal();
  return m;
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = random_matrix(dim, rng);
  ComplexMatrix h = g + g.adjoint();
  h *= 0.5;
  return h;
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  std::vector<ComplexVector> columns;
  columns.reserve(dim);
  for (std::size_t j = 0; j < dim; ++j) columns.push_back(random_vector(dim, rng));
  columns = gram_schmidt(std::move(columns));
  ComplexMatrix u(dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = columns[j][i];
  return u;
}

ComplexMatrix random_density_matrix(std::size_t dim, Rng& rng, std::size_t rank) {
  if (rank == 0 || rank > dim) rank = dim;
  ComplexMatrix g(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  // Enforce exact Hermiticity and unit trace.
  rho = rho + rho.adjoint();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

std::vector<ComplexVector> gram_schmidt(std::vector<ComplexVector> vectors) {
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    const double original = vector_norm(vectors[k]);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < k; ++j) project_out(vectors[k], vectors[j]);
    if (vector_norm(vectors[k]) <= kDependenceTol * std::max(original, 1.0)) {
      throw InvalidArgument("gram_schmidt: vectors are linearly dependent");
    }
    normalize(vectors[k]);
  }
  return vectors;
}

std::vector<ComplexVector> orthonormal_completion(std::span<const ComplexVector> family, std::size_t dim) {
  std::vector<ComplexVector> basis(family.begin(), family.end());
  if (basis.size() > dim) throw InvalidArgument("orthonormal_completion: family larger than the space");
  std::vector<bool> used(dim, false);
  while (basis.size() < dim) {
    std::size_t best_index = dim;
    double best_norm = -1.0;
    ComplexVector best;
    for (std::size_t c = 0; c < dim; ++c) {
      if (used[c]) continue;
      ComplexVector v(dim);
      v[c] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (const ComplexVector& b : basis) project_out(v, b);
      const double n = vector_norm(v);
      if (n > best_norm) {
        best_norm = n;
        best_index = c;
        best = std::move(v);
      }
    }
    if (best_norm <= kDependenceTol) throw InvalidArgument("orthonormal_completion: family is not orthonormal");
    used[best_index] = true;
    normalize(best);
    basis.push_back(std::move(best));
  }
  return basis;
}

}  // namespace rlab
