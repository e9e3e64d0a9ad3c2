#include "reduction_lab/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "reduction_lab/errors.hpp"

namespace rlab {
namespace {

using EigenMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenMatrix> as_eigen(const ComplexMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  return Eigen::Map<const EigenMatrix>(m.data().data(), n, n);
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix h = m + m.adjoint();
  h *= 0.5;
  return h;
}

Eigen::VectorXd singular_values(const ComplexMatrix& m) {
  Eigen::JacobiSVD<EigenMatrix> svd(as_eigen(m));
  return svd.singularValues();
}

}  // namespace

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix r(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const cplx s = a(i, j);
      if (s == cplx{}) continue;
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) r(i * db + k, j * db + l) = s * b(k, l);
    }
  return r;
}

ComplexMatrix partial_trace_apparatus(const ComplexMatrix& m, std::size_t dim_s, std::size_t dim_a) {
  if (dim_s == 0 || dim_a == 0 || m.dim() != dim_s * dim_a) {
    throw InvalidArgument("partial_trace_apparatus: matrix dimension " + std::to_string(m.dim()) +
                          " is not dimS * dimA = " + std::to_string(dim_s) + " * " + std::to_string(dim_a));
  }
  ComplexMatrix r(dim_s);
  for (std::size_t i = 0; i < dim_s; ++i)
    for (std::size_t j = 0; j < dim_s; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < dim_a; ++k) acc += m(i * dim_a + k, j * dim_a + k);
      r(i, j) = acc;
    }
  return r;
}

ComplexMatrix partial_trace_object(const ComplexMatrix& m, std::size_t dim_s, std::size_t dim_a) {
  if (dim_s == 0 || dim_a == 0 || m.dim() != dim_s * dim_a) {
    throw InvalidArgument("partial_trace_object: matrix dimension " + std::to_string(m.dim()) +
                          " is not dimS * dimA = " + std::to_string(dim_s) + " * " + std::to_string(dim_a));
  }
  ComplexMatrix r(dim_a);
  for (std::size_t k = 0; k < dim_a; ++k)
    for (std::size_t l = 0; l < dim_a; ++l) {
      cplx acc = 0.0;
      for (std::size_t i = 0; i < dim_s; ++i) acc += m(i * dim_a + k, i * dim_a + l);
      r(k, l) = acc;
    }
  return r;
}

ComplexMatrix EigenDecomposition::reconstruct() const {
  ComplexMatrix r(vectors.front().size());
  for (std::size_t k = 0; k < values.size(); ++k) r.add_scaled(values[k], ComplexMatrix::outer(vectors[k], vectors[k]));
  return r;
}

double hermiticity_defect(const ComplexMatrix& m) { return (m - m.adjoint()).frobenius_norm(); }

EigenDecomposition hermitian_eig(const ComplexMatrix& m) {
  const double defect = hermiticity_defect(m);
  if (defect > 1e-10 * m.frobenius_norm()) {
    throw InvalidArgument("hermitian_eig: matrix is not Hermitian (||m - m^dagger|| = " + std::to_string(defect) +
                          ")");
  }
  const ComplexMatrix h = hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(as_eigen(h));
  if (solver.info() != Eigen::Success) throw NumericalConsistencyError("hermitian_eig: eigensolver did not converge");

  EigenDecomposition out;
  const auto n = static_cast<Eigen::Index>(m.dim());
  out.values.reserve(m.dim());
  out.vectors.reserve(m.dim());
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values.push_back(solver.eigenvalues()(k));
    ComplexVector v(m.dim());
    for (Eigen::Index i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = solver.eigenvectors()(i, k);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

double trace_norm(const ComplexMatrix& m) { return singular_values(m).sum(); }

double operator_norm(const ComplexMatrix& m) { return singular_values(m).maxCoeff(); }

double min_eigenvalue(const ComplexMatrix& m) {
  const ComplexMatrix h = hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(as_eigen(h), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_psd(const ComplexMatrix& m, double tol) {
  if (max_abs_diff(m, m.adjoint()) > tol) return false;
  return min_eigenvalue(m) >= -tol;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.dim())) <= tol;
}

JordanParts jordan_decomposition(const ComplexMatrix& hermitian) {
  const EigenDecomposition eig = hermitian_eig(hermitian);
  JordanParts parts{ComplexMatrix(hermitian.dim()), ComplexMatrix(hermitian.dim())};
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    const double lambda = eig.values[k];
    if (lambda > 0.0) {
      parts.positive.add_scaled(lambda, ComplexMatrix::outer(eig.vectors[k], eig.vectors[k]));
    } else if (lambda < 0.0) {
      parts.negative.add_scaled(-lambda, ComplexMatrix::outer(eig.vectors[k], eig.vectors[k]));
    }
  }
  return parts;
}

}  // namespace rlab
