#pragma once

// Composite-system and spectral operations on ComplexMatrix.
//
// Tensor factor order is object (S) first, apparatus (A) second, with the
// composite index (i_S, i_A) flattened to i_S * dimA + i_A.

#include <cstddef>
#include <vector>

#include "reduction_lab/matrix.hpp"
#include "reduction_lab/tolerance.hpp"

namespace rlab {

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr_A over the second factor: result(i, j) = sum_k m((i, k), (j, k)).
ComplexMatrix partial_trace_apparatus(const ComplexMatrix& m, std::size_t dim_s, std::size_t dim_a);

/// Tr_S over the first factor.
ComplexMatrix partial_trace_object(const ComplexMatrix& m, std::size_t dim_s, std::size_t dim_a);

struct EigenDecomposition {
  std::vector<double> values;          // ascending
  std::vector<ComplexVector> vectors;  // orthonormal, vectors[k] pairs with values[k]

  ComplexMatrix reconstruct() const;
};

/// ||m - m^dagger||_F
double hermiticity_defect(const ComplexMatrix& m);

/// Spectral decomposition of a Hermitian matrix. Accepts m when
/// ||m - m^dagger||_F <= 1e-10 * ||m||_F and decomposes (m + m^dagger) / 2;
/// throws InvalidArgument otherwise.
EigenDecomposition hermitian_eig(const ComplexMatrix& m);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

/// Smallest eigenvalue of the Hermitian part (m + m^dagger) / 2.
double min_eigenvalue(const ComplexMatrix& m);

/// True iff m is Hermitian (entrywise within tol) and its smallest eigenvalue is >= -tol.
bool is_psd(const ComplexMatrix& m, double tol = kDefaultTol);

/// max_ij |(u^dagger u - 1)_ij| <= tol
bool is_unitary(const ComplexMatrix& u, double tol = kDefaultTol);

/// Positive and negative parts of a Hermitian matrix: m = pos - neg, both PSD.
struct JordanParts {
  ComplexMatrix positive;
  ComplexMatrix negative;
};
JordanParts jordan_decomposition(const ComplexMatrix& hermitian);

}  // namespace rlab
