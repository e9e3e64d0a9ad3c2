#include "reduction_lab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "reduction_lab/errors.hpp"
#include "reduction_lab/linalg.hpp"

namespace rlab {

JointDistribution::JointDistribution(DiscreteObservable first, DiscreteObservable second,
                                     std::vector<std::vector<double>> table)
    : first_(std::move(first)), second_(std::move(second)), table_(std::move(table)) {
  if (table_.size() != first_.size()) throw InvalidArgument("joint table needs one row per first outcome");
  for (const auto& row : table_)
    if (row.size() != second_.size()) throw InvalidArgument("joint table needs one column per second outcome");
}

double JointDistribution::at(double a, double x) const noexcept {
  const auto i = first_.index_of(a);
  const auto j = second_.index_of(x);
  return (i && j) ? table_[*i][*j] : 0.0;
}

double JointDistribution::marginal(double a) const noexcept {
  const auto i = first_.index_of(a);
  if (!i) return 0.0;
  double s = 0.0;
  for (double p : table_[*i]) s += p;
  return s;
}

std::vector<std::vector<double>> joint_product_form(const Instrument& ins, const DiscreteObservable& second,
                                                    const DensityOperator& rho, double floor) {
  std::vector<std::vector<double>> rows;
  for (const auto& o : ins.observable().outcomes()) {
    std::vector<double> row;
    const double p = outcome_probability(ins, o.value, rho);
    if (p > floor) {
      const DensityOperator reduced = reduce(ins, o.value, rho, floor);
      for (const auto& x : second.outcomes()) row.push_back(p * born_probability(second, x.value, reduced));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

JointDistribution joint_distribution(const Instrument& ins, const DiscreteObservable& second,
                                     const DensityOperator& rho, double tol, double floor) {
  if (second.dim() != ins.dim() || rho.dim() != ins.dim()) {
    throw InvalidArgument("joint_distribution: dimension mismatch");
  }
  std::vector<std::vector<double>> table;
  for (const Superoperator& component : ins.components()) {
    const ComplexMatrix image = component(rho.matrix());
    std::vector<double> row;
    for (const auto& x : second.outcomes())
      row.push_back(checked_probability(trace_of_product(x.projector, image).real(), tol));
    table.push_back(std::move(row));
  }

  const auto product = joint_product_form(ins, second, rho, floor);
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < product[i].size(); ++j) {
      const double gap = std::abs(product[i][j] - table[i][j]);
      if (gap > tol) {
        throw NumericalConsistencyError("joint_distribution: product form and instrument form differ by " +
                                        std::to_string(gap));
      }
    }
  }
  return JointDistribution(ins.observable(), second, std::move(table));
}

JointDistribution joint_distribution(const MeasurementModel& model, const DiscreteObservable& second,
                                     const DensityOperator& rho, double tol) {
  return joint_distribution(instrument_of(model), second, rho, tol);
}

std::vector<std::pair<double, double>> conditional_distribution(const JointDistribution& jd, double a, double floor) {
  const double marginal = jd.marginal(a);
  if (marginal <= floor) throw ZeroProbabilityOutcome(a, marginal);
  const auto i = jd.first().index_of(a);
  std::vector<std::pair<double, double>> out;
  const auto& outcomes = jd.second().outcomes();
  for (std::size_t j = 0; j < outcomes.size(); ++j) out.emplace_back(outcomes[j].value, jd.table()[*i][j] / marginal);
  return out;
}

double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) { return 0.5 * trace_norm(rho - sigma); }

ComplexMatrix PureDecomposition::reassemble() const {
  ComplexMatrix m(states.front().dim());
  for (std::size_t k = 0; k < states.size(); ++k) m.add_scaled(weights[k], states[k].projector());
  return m;
}

double DecompositionExhibit::min_cross_distance() const {
  const PureDecomposition& phi = decompositions.at(0);
  const PureDecomposition& eta = decompositions.at(1);
  double best = 1.0;
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l)
      best = std::min(best, trace_distance(phi.states[k].projector(), eta.states[l].projector()));
  return best;
}

DecompositionExhibit nonuniqueness_exhibit(std::size_t dim) {
  if (dim < 2) throw InvalidArgument("nonuniqueness_exhibit: dimension must be at least 2");

  std::vector<DiscreteObservable::Outcome> outcomes;
  for (std::size_t n = 0; n < dim; ++n) {
    const double value = static_cast<double>(dim) - 1.0 - 2.0 * static_cast<double>(n);
    outcomes.push_back({value, ComplexMatrix::unit(dim, n, n)});
  }
  DiscreteObservable observable(std::move(outcomes));

  std::vector<double> weights(dim);
  if (dim == 2) {
    weights = {0.5, 0.5};
  } else {
    weights[0] = weights[1] = 0.25;
    for (std::size_t n = 2; n < dim; ++n) weights[n] = 0.5 / static_cast<double>(dim - 2);
  }
  ComplexVector amplitudes(dim);
  for (std::size_t n = 0; n < dim; ++n) amplitudes[n] = std::sqrt(weights[n]);
  const PureState psi = PureState::normalized(amplitudes);
  const DensityOperator rho(psi);

  const Instrument ins = instrument_from_operation(luders_operation(observable), observable);
  const DensityOperator mixed = nonselective(ins, rho);

  PureDecomposition phi{"phi", weights, {}};
  for (std::size_t n = 0; n < dim; ++n) phi.states.push_back(PureState::basis(dim, n));

  PureDecomposition eta{"eta", weights, {}};
  const double r = 1.0 / std::numbers::sqrt2;
  ComplexVector plus(dim);
  ComplexVector minus(dim);
  plus[0] = r;
  plus[1] = r;
  minus[0] = r;
  minus[1] = -r;
  eta.states.push_back(PureState(plus));
  eta.states.push_back(PureState(minus));
  for (std::size_t n = 2; n < dim; ++n) eta.states.push_back(PureState::basis(dim, n));

  std::vector<std::pair<double, ComplexMatrix>> components;
  for (std::size_t k = 0; k < ins.components().size(); ++k)
    components.emplace_back(ins.observable().outcomes()[k].value, ins.components()[k](rho.matrix()));

  return DecompositionExhibit{std::move(observable), psi, mixed, {std::move(phi), std::move(eta)},
                              std::move(components)};
}

}  // namespace rlab
