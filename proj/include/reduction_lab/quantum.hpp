#pragma once

// States, projective observables and single-measurement statistics.

#include <cstddef>
#include <optional>
#include <vector>

#include "reduction_lab/matrix.hpp"
#include "reduction_lab/tolerance.hpp"

namespace rlab {

class PureState {
 public:
  /// Throws InvalidArgument unless | ||v|| - 1 | <= 1e-12.
  explicit PureState(ComplexVector v);
  static PureState normalized(ComplexVector v);
  /// |k>
  static PureState basis(std::size_t dim, std::size_t k);

  std::size_t dim() const noexcept { return vector_.size(); }
  const ComplexVector& vector() const noexcept { return vector_; }
  ComplexMatrix projector() const { return ComplexMatrix::outer(vector_, vector_); }

 private:
  ComplexVector vector_;
};

/// Positive, unit-trace operator. Validated on construction: Hermitian within
/// 1e-10, smallest eigenvalue >= -1e-10, |Tr - 1| <= 1e-12.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m);
  DensityOperator(const PureState& psi);  // NOLINT: a pure state is a density operator

  static DensityOperator maximally_mixed(std::size_t dim);

  std::size_t dim() const noexcept { return matrix_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  friend bool operator==(const DensityOperator&, const DensityOperator&) = default;

 private:
  ComplexMatrix matrix_;
};

/// alpha * rho1 + (1 - alpha) * rho2
DensityOperator mix(double alpha, const DensityOperator& rho1, const DensityOperator& rho2);

/// Observable with discrete spectrum, stored as its spectral family
/// {(a, E(a))}. Outcomes are kept in ascending eigenvalue order.
class DiscreteObservable {
 public:
  struct Outcome {
    double value;
    ComplexMatrix projector;

    friend bool operator==(const Outcome&, const Outcome&) = default;
  };

  /// Validates: each E Hermitian and idempotent, E_i E_j = 0 for i != j,
  /// sum E = 1 (all within `tol`), eigenvalues pairwise distinct.
  explicit DiscreteObservable(std::vector<Outcome> outcomes, double tol = kDefaultTol);

  /// Single outcome `value` with projector 1.
  static DiscreteObservable trivial(std::size_t dim, double value = 1.0);

  std::size_t dim() const noexcept { return outcomes_.front().projector.dim(); }
  std::size_t size() const noexcept { return outcomes_.size(); }
  const std::vector<Outcome>& outcomes() const noexcept { return outcomes_; }
  std::vector<double> eigenvalues() const;

  /// Index of the outcome whose value equals `a` exactly.
  std::optional<std::size_t> index_of(double a) const noexcept;
  /// E(a); the zero operator when `a` is not an eigenvalue.
  ComplexMatrix projector(double a) const;

  bool is_nondegenerate() const;
  /// sum_a a E(a)
  ComplexMatrix to_hermitian() const;

  friend bool operator==(const DiscreteObservable&, const DiscreteObservable&) = default;

 private:
  std::vector<Outcome> outcomes_;
};

/// Spectral projections of a Hermitian matrix. Sorted eigenvalues whose gap to
/// the previous one is <= degeneracy_tol join the same cluster; the cluster's
/// value is the mean of its members.
DiscreteObservable observable_from_hermitian(const ComplexMatrix& h, double degeneracy_tol = kDegeneracyTol);

/// Checks a probability against [-tol, 1 + tol] and clamps it into [0, 1].
/// Throws NumericalConsistencyError outside the band.
double checked_probability(double p, double tol = kDefaultTol);

/// Pr{A = a | rho} = Tr[E(a) rho]; zero when `a` is not an eigenvalue.
double born_probability(const DiscreteObservable& obs, double a, const DensityOperator& rho);

}  // namespace rlab
