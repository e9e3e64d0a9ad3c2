#pragma once

// Linear maps on operators over C^d.
//
// A map is stored as the d^2 x d^2 matrix acting on column-stacked operators:
// vec(X)[i + j d] = X(i, j), so vec(A X B) = (B^T (x) A) vec(X).

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "reduction_lab/matrix.hpp"
#include "reduction_lab/quantum.hpp"
#include "reduction_lab/tolerance.hpp"

namespace rlab {

ComplexVector vectorize(const ComplexMatrix& x);
ComplexMatrix devectorize(std::span<const cplx> v, std::size_t dim);

class Superoperator {
 public:
  /// `rep` must be dim^2 x dim^2.
  Superoperator(std::size_t dim, ComplexMatrix rep);

  static Superoperator identity(std::size_t dim);
  static Superoperator zero(std::size_t dim);
  /// Builds the representation from the images of the matrix units.
  static Superoperator from_function(std::size_t dim, const std::function<ComplexMatrix(const ComplexMatrix&)>& f);
  /// X -> L X R
  static Superoperator sandwich(const ComplexMatrix& left, const ComplexMatrix& right);
  /// X -> K X K^dagger
  static Superoperator conjugation(const ComplexMatrix& k);
  /// X -> sum_k K_k X K_k^dagger
  static Superoperator from_kraus(std::span<const ComplexMatrix> kraus);

  std::size_t dim() const noexcept { return dim_; }
  const ComplexMatrix& rep() const noexcept { return rep_; }

  ComplexMatrix operator()(const ComplexMatrix& x) const;

  /// (this o other)(X) = this(other(X))
  Superoperator compose(const Superoperator& other) const;

  Superoperator& operator+=(const Superoperator& other);
  Superoperator& operator-=(const Superoperator& other);
  friend Superoperator operator+(Superoperator a, const Superoperator& b) { return a += b; }
  friend Superoperator operator-(Superoperator a, const Superoperator& b) { return a -= b; }
  friend Superoperator operator*(cplx s, Superoperator a);

 private:
  std::size_t dim_;
  ComplexMatrix rep_;
};

ComplexMatrix apply(const Superoperator& s, const ComplexMatrix& m);

/// Tr[s(rho)]
cplx trace_of_map(const Superoperator& s, const ComplexMatrix& rho);

/// max-abs distance of the representations, i.e. the largest entry
/// difference of the images of the matrix units.
double map_distance(const Superoperator& a, const Superoperator& b);
bool maps_equal(const Superoperator& a, const Superoperator& b, double tol = kVerifyTol);

/// The dual (Heisenberg-picture) map: Tr[X s(rho)] = Tr[dual(s)(X) rho].
Superoperator dual(const Superoperator& s);

/// Block matrix [s(|i><j|)]_{ij}; PSD exactly when s is completely positive.
struct ChoiMatrix {
  std::size_t dim;
  ComplexMatrix matrix;
};

ChoiMatrix choi(const Superoperator& s);
Superoperator from_choi(const ChoiMatrix& c);

/// Kraus operators from the spectral decomposition of the Choi matrix;
/// eigenvalues <= rank_tol are dropped. Throws NotCompletelyPositive (carrying
/// the most negative eigenvalue) if the Choi matrix has an eigenvalue < -rank_tol.
std::vector<ComplexMatrix> kraus_from_choi(const ChoiMatrix& c, double rank_tol = kDefaultTol);

bool is_completely_positive(const Superoperator& s, double tol = kDefaultTol);

/// Necessary check for positivity: s(|psi><psi|) is PSD within `tol` for
/// `trials` Haar-random psi. Deterministic in `seed`.
bool is_positive_sampled(const Superoperator& s, int trials, std::uint64_t seed, double tol = kDefaultTol);

/// m = l1 s1 - l2 s2 + i l3 s3 - i l4 s4 with l_k >= 0 and s_k density
/// operators: positive and negative parts of the Hermitian and anti-Hermitian
/// components. Parts with l_k = 0 hold the maximally mixed state.
struct TraceClassDecomposition {
  std::array<double, 4> lambdas;
  std::array<DensityOperator, 4> parts;

  static constexpr std::array<cplx, 4> kPhases{cplx{1, 0}, cplx{-1, 0}, cplx{0, 1}, cplx{0, -1}};

  ComplexMatrix reassemble() const;
};

TraceClassDecomposition decompose_trace_class(const ComplexMatrix& m);

}  // namespace rlab
