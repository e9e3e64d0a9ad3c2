#pragma once

// Operational distributions (instruments) {T_a} with their operation T.

#include <cstdint>
#include <vector>

#include "reduction_lab/quantum.hpp"
#include "reduction_lab/report.hpp"
#include "reduction_lab/superop.hpp"
#include "reduction_lab/tolerance.hpp"

namespace rlab {

/// An instrument for a discrete observable: one map per outcome, aligned with
/// observable().outcomes(), plus the total operation.
///
/// Construction only checks shapes. Whether the family actually satisfies the
/// instrument axioms is a question for check_axioms(); corrupted instruments
/// are representable on purpose so that the verifiers can be exercised.
class Instrument {
 public:
  Instrument(DiscreteObservable observable, std::vector<Superoperator> components, Superoperator total);

  std::size_t dim() const noexcept { return total_.dim(); }
  const DiscreteObservable& observable() const noexcept { return observable_; }
  const std::vector<Superoperator>& components() const noexcept { return components_; }
  const Superoperator& total() const noexcept { return total_; }

  /// T_a, or nullptr when `a` is not an eigenvalue (T_a = 0 there).
  const Superoperator* component(double a) const noexcept;

 private:
  DiscreteObservable observable_;
  std::vector<Superoperator> components_;
  Superoperator total_;
};

/// Operators on which linear identities are checked: the d^2 matrix units
/// followed by 20 random density matrices from a fixed seed.
std::vector<ComplexMatrix> spanning_set(std::size_t dim);

struct AxiomTolerances {
  double completeness = kVerifyTol;  // sum_a T_a = T
  double trace = kDefaultTol;        // Tr T(X) = Tr X and Tr T_a(X) = Tr E(a) X
  double positivity = kDefaultTol;   // Choi(T_a) >= -tol
};

/// Checks completeness, trace preservation of T, the outcome-trace condition
/// and complete positivity of every T_a on spanning_set().
VerificationReport check_axioms(const Instrument& ins, const AxiomTolerances& tol = {});

/// Tr[T_a(rho)], clamped after a band check; 0 for non-eigenvalues.
double outcome_probability(const Instrument& ins, double a, const DensityOperator& rho);

/// T_a(rho) / Tr[T_a(rho)]. Throws ZeroProbabilityOutcome when the outcome
/// probability is <= floor.
DensityOperator reduce(const Instrument& ins, double a, const DensityOperator& rho,
                       double floor = kProbabilityFloor);

struct ReducedState {
  DensityOperator state;
  bool defined;  // false: zero-probability outcome, `state` is maximally mixed
};

/// Like reduce(), but a zero-probability outcome yields the maximally mixed
/// state with `defined = false` instead of throwing.
ReducedState reduce_or_maximally_mixed(const Instrument& ins, double a, const DensityOperator& rho,
                                       double floor = kProbabilityFloor);

/// T(rho)
DensityOperator nonselective(const Instrument& ins, const DensityOperator& rho);

/// rho -> sum_a E(a) rho E(a)
Superoperator luders_operation(const DiscreteObservable& obs);
/// T_a(rho) = E(a) rho E(a)
Instrument luders_instrument(const DiscreteObservable& obs);

/// Builds T_a = T(E(a) . E(a)) from an operation.
///
/// The operation must be trace preserving (else InvalidArgument) and must be
/// the operation of an apparatus measuring `obs`: on spanning_set() both
/// Tr[T(E X E)] = Tr[E X] and T(X) = sum_a T(E(a) X E(a)) must hold within
/// `tol`, else NotAMeasurement naming the worst-violating pair.
Instrument instrument_from_operation(const Superoperator& operation, const DiscreteObservable& obs,
                                     double tol = kVerifyTol);

/// Checks T_a(rho) = T(E rho) = T(rho E) = T(E rho E) for the d^2 matrix units
/// and `trials` random non-Hermitian operators of unit trace norm. T_a(rho) is
/// evaluated through the four-state decomposition of rho. Residuals are trace
/// norms.
VerificationReport verify_theorem1(const Instrument& ins, int trials = 20, std::uint64_t seed = 1,
                                   double tol = kVerifyTol);

/// Dual-map identities: T*(1) = 1, T_a*(1) = E(a), and for `trials` random X
/// with ||X|| = 1: T_a*(X) = E T*(X) = T*(X) E = E T*(X) E. Residuals are
/// operator norms.
VerificationReport verify_dual_lemma(const Instrument& ins, int trials = 50, std::uint64_t seed = 1,
                                     double tol = kVerifyTol);

}  // namespace rlab
