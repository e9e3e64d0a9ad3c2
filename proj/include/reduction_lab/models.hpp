#pragma once

// Unitary object-apparatus measurement models (sigma, U, M) and the maps they
// induce on the object:
//
//   operation        T(rho)    = Tr_A[U (rho (x) sigma) U^dagger]
//   instrument       T_a(rho)  = Tr_A[U (E(a) rho E(a) (x) sigma) U^dagger]
//   probe instrument T'_a(rho) = Tr_A[(1 (x) F(a)) U (rho (x) sigma) U^dagger (1 (x) F(a))]
//
// with E the spectral family of the measured observable and F that of the probe.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "reduction_lab/instrument.hpp"
#include "reduction_lab/quantum.hpp"
#include "reduction_lab/report.hpp"
#include "reduction_lab/superop.hpp"
#include "reduction_lab/tolerance.hpp"

namespace rlab {

class MeasurementModel {
 public:
  /// Validates dimensions, unitarity of U within 1e-10, and that the probe
  /// (when given) has exactly the observable's eigenvalues.
  MeasurementModel(DiscreteObservable observable, DensityOperator apparatus_state, ComplexMatrix unitary,
                   std::optional<DiscreteObservable> probe = std::nullopt);

  std::size_t dim_s() const noexcept { return observable_.dim(); }
  std::size_t dim_a() const noexcept { return apparatus_state_.dim(); }
  const DiscreteObservable& observable() const noexcept { return observable_; }
  const DensityOperator& apparatus_state() const noexcept { return apparatus_state_; }
  const ComplexMatrix& unitary() const noexcept { return unitary_; }
  const std::optional<DiscreteObservable>& probe() const noexcept { return probe_; }

  MeasurementModel with_unitary(ComplexMatrix unitary) const;
  MeasurementModel with_probe(std::optional<DiscreteObservable> probe) const;
  MeasurementModel with_apparatus_state(DensityOperator sigma) const;

  friend bool operator==(const MeasurementModel&, const MeasurementModel&) = default;

 private:
  DiscreteObservable observable_;
  DensityOperator apparatus_state_;
  ComplexMatrix unitary_;
  std::optional<DiscreteObservable> probe_;
};

/// Whether probe statistics reproduce the Born rule of the observable:
/// F_a = Tr_A[U^dagger (1 (x) E^M(a)) U (1 (x) sigma)] against E^A(a).
struct ConsistencyReport {
  struct Entry {
    double outcome;
    double residual;  // operator norm ||F_a - E^A(a)||
  };
  std::vector<Entry> residuals;
  double worst_outcome = 0.0;
  double worst_residual = 0.0;
  bool pass = false;
  double tolerance = kVerifyTol;

  VerificationReport to_report() const;
};

/// Throws MissingProbe when the model has none.
ConsistencyReport probe_consistency(const MeasurementModel& model, double tol = kVerifyTol);

Superoperator operation_of(const MeasurementModel& model);

/// Instrument from the interaction alone. With a probe the model must pass
/// probe_consistency; without one, the operation must satisfy
/// T = sum_a T(E(a) . E(a)). Failure throws NotAMeasurement.
Instrument instrument_of(const MeasurementModel& model, double tol = kVerifyTol);

/// Instrument from projecting the probe after the interaction. Throws
/// MissingProbe, or NotAMeasurement when probe_consistency fails.
Instrument probe_instrument_of(const MeasurementModel& model, double tol = kVerifyTol);

/// Pointer-basis model U(phi_n (x) xi) = phi_n (x) xi_n with xi = |0>.
/// `pointer_basis` holds xi_n as columns; the first N columns are the pointers
/// of the N outcomes in ascending eigenvalue order. The probe is
/// M = sum_n a_n |xi_n><xi_n|, remaining columns folded into the first outcome.
/// Throws UnsupportedDegenerate for degenerate observables.
MeasurementModel von_neumann_model(const DiscreteObservable& observable, std::size_t dim_a,
                                   const ComplexMatrix& pointer_basis);
/// Standard pointer basis xi_n = |n>.
MeasurementModel von_neumann_model(const DiscreteObservable& observable, std::size_t dim_a);
/// Haar-random pointer basis drawn from `seed`.
MeasurementModel von_neumann_model(const DiscreteObservable& observable, std::size_t dim_a, std::uint64_t seed);

/// Sizes of the per-outcome apparatus sectors: as equal as possible, the
/// remainder going to the first sectors.
std::vector<std::size_t> sector_sizes(std::size_t dim_a, std::size_t outcomes);

/// Random model that measures `observable` exactly, degenerate or not.
///
/// The apparatus space is split into orthogonal sectors, one per outcome, and
/// the probe projects onto them. sigma is a random density matrix of rank
/// `apparatus_rank` supported on span{|0>, ..., |rank-1>} (pure |0><0| for
/// rank 1). U sends E(a)H_S (x) supp(sigma) isometrically into H_S (x) sector(a)
/// through a random isometry and is completed to a unitary deterministically.
/// Requires apparatus_rank <= dim_a / outcomes.
MeasurementModel random_faithful_model(const DiscreteObservable& observable, std::size_t dim_a,
                                       std::uint64_t seed, std::size_t apparatus_rank = 1);

/// A faithful model with the probe projectors of outcomes i and j exchanged.
/// Rejects i == j (no bias).
MeasurementModel swap_probe_outcomes(const MeasurementModel& model, std::size_t i, std::size_t j);

/// random_faithful_model with the probe sectors of the two lowest outcomes
/// swapped; probe_consistency then fails with residual
/// ||E(a_0) - E(a_1)|| = 1. Needs at least two outcomes.
MeasurementModel random_biased_model(const DiscreteObservable& observable, std::size_t dim_a, std::uint64_t seed);

}  // namespace rlab
