#pragma once

// Consecutive-measurement statistics and the decomposition non-uniqueness
// exhibit.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "reduction_lab/instrument.hpp"
#include "reduction_lab/models.hpp"
#include "reduction_lab/quantum.hpp"
#include "reduction_lab/tolerance.hpp"

namespace rlab {

/// Pr{A = a, then X = x}. table[i][j] pairs first().outcomes()[i] with
/// second().outcomes()[j].
class JointDistribution {
 public:
  JointDistribution(DiscreteObservable first, DiscreteObservable second, std::vector<std::vector<double>> table);

  const DiscreteObservable& first() const noexcept { return first_; }
  const DiscreteObservable& second() const noexcept { return second_; }
  const std::vector<std::vector<double>>& table() const noexcept { return table_; }

  /// 0 when either value is not an eigenvalue.
  double at(double a, double x) const noexcept;
  /// sum_x Pr{a, x}
  double marginal(double a) const noexcept;

 private:
  DiscreteObservable first_;
  DiscreteObservable second_;
  std::vector<std::vector<double>> table_;
};

/// table(a, x) = Tr[E^X(x) T_a(rho)], defined for every a including
/// zero-probability ones. Cross-checked against the product form
/// Pr{a} Tr[E^X(x) rho_a] wherever Pr{a} > floor; a disagreement above `tol`
/// throws NumericalConsistencyError.
JointDistribution joint_distribution(const Instrument& ins, const DiscreteObservable& second,
                                     const DensityOperator& rho, double tol = kDefaultTol,
                                     double floor = kProbabilityFloor);
/// Uses instrument_of(model); unfaithful models throw NotAMeasurement.
JointDistribution joint_distribution(const MeasurementModel& model, const DiscreteObservable& second,
                                     const DensityOperator& rho, double tol = kDefaultTol);

/// Pr{a} * Tr[E^X(x) rho_a] via the reduced states; rows with Pr{a} <= floor
/// are left empty.
std::vector<std::vector<double>> joint_product_form(const Instrument& ins, const DiscreteObservable& second,
                                                    const DensityOperator& rho, double floor = kProbabilityFloor);

/// Pr{X = x | A = a} as (x, probability) pairs. Throws ZeroProbabilityOutcome
/// when the marginal of `a` is <= floor.
std::vector<std::pair<double, double>> conditional_distribution(const JointDistribution& jd, double a,
                                                                double floor = kProbabilityFloor);

/// (1/2) ||rho - sigma||_1
double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);

struct PureDecomposition {
  std::string label;
  std::vector<double> weights;
  std::vector<PureState> states;

  ComplexMatrix reassemble() const;
};

/// One mixed state, two pure-state decompositions of it, and the components
/// T_a(rho) that the instrument of the measurement singles out.
struct DecompositionExhibit {
  DiscreteObservable observable;   // A = diag(d-1, d-3, ..., 1-d) in the basis phi_n = |n>
  PureState input;                 // psi, with |<phi_0|psi>|^2 = |<phi_1|psi>|^2
  DensityOperator mixed_state;     // T(|psi><psi|)
  std::vector<PureDecomposition> decompositions;  // [0]: phi basis, [1]: eta_{+-} = (phi_0 +- phi_1)/sqrt2
  std::vector<std::pair<double, ComplexMatrix>> instrument_components;  // (a_n, T_{a_n}(|psi><psi|))

  /// Smallest trace distance between a phi_0/phi_1 state and an eta state.
  double min_cross_distance() const;
};

/// Requires dim >= 2. For dim = 2, psi = |+>; for larger dim the first two
/// weights are 1/4 each and the rest share 1/2 equally.
DecompositionExhibit nonuniqueness_exhibit(std::size_t dim = 2);

}  // namespace rlab
