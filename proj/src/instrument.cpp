#include "reduction_lab/instrument.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reduction_lab/errors.hpp"
#include "reduction_lab/linalg.hpp"
#include "reduction_lab/random.hpp"

namespace rlab {
namespace {

constexpr std::uint64_t kSpanningSeed = 0x5eed5eedULL;
constexpr std::size_t kSpanningRandomStates = 20;

void require_dim(const Instrument& ins, std::size_t dim, const char* op) {
  if (ins.dim() != dim) {
    throw InvalidArgument(std::string(op) + ": state dimension " + std::to_string(dim) +
                          " does not match instrument dimension " + std::to_string(ins.dim()));
  }
}

ComplexMatrix hermitized(const ComplexMatrix& m) {
  ComplexMatrix h = m + m.adjoint();
  h *= 0.5;
  return h;
}

// Unit trace norm, generically non-Hermitian.
ComplexMatrix random_trace_class(std::size_t dim, Rng& rng) {
  ComplexMatrix m = random_matrix(dim, rng);
  m *= 1.0 / trace_norm(m);
  return m;
}

ComplexMatrix random_bounded(std::size_t dim, Rng& rng) {
  ComplexMatrix m = random_matrix(dim, rng);
  m *= 1.0 / operator_norm(m);
  return m;
}

}  // namespace

Instrument::Instrument(DiscreteObservable observable, std::vector<Superoperator> components, Superoperator total)
    : observable_(std::move(observable)), components_(std::move(components)), total_(std::move(total)) {
  if (components_.size() != observable_.size()) {
    throw InvalidArgument("instrument needs one component per outcome (" + std::to_string(observable_.size()) +
                          "), got " + std::to_string(components_.size()));
  }
  if (total_.dim() != observable_.dim()) throw InvalidArgument("instrument total has the wrong dimension");
  for (const Superoperator& c : components_)
    if (c.dim() != observable_.dim()) throw InvalidArgument("instrument component has the wrong dimension");
}

const Superoperator* Instrument::component(double a) const noexcept {
  if (auto i = observable_.index_of(a)) return &components_[*i];
  return nullptr;
}

std::vector<ComplexMatrix> spanning_set(std::size_t dim) {
  std::vector<ComplexMatrix> set;
  set.reserve(dim * dim + kSpanningRandomStates);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) set.push_back(ComplexMatrix::unit(dim, i, j));
  Rng rng(kSpanningSeed);
  for (std::size_t k = 0; k < kSpanningRandomStates; ++k) set.push_back(random_density_matrix(dim, rng));
  return set;
}

VerificationReport check_axioms(const Instrument& ins, const AxiomTolerances& tol) {
  VerificationReport report;
  const std::vector<ComplexMatrix> probes = spanning_set(ins.dim());
  const auto& outcomes = ins.observable().outcomes();

  double completeness = 0.0;
  double trace_preservation = 0.0;
  std::vector<double> outcome_trace(outcomes.size(), 0.0);
  for (const ComplexMatrix& x : probes) {
    ComplexMatrix sum(ins.dim());
    for (std::size_t n = 0; n < outcomes.size(); ++n) {
      const ComplexMatrix image = ins.components()[n](x);
      sum += image;
      outcome_trace[n] =
          std::max(outcome_trace[n], std::abs(image.trace() - trace_of_product(outcomes[n].projector, x)));
    }
    const ComplexMatrix total_image = ins.total()(x);
    completeness = std::max(completeness, max_abs_diff(total_image, sum));
    trace_preservation = std::max(trace_preservation, std::abs(total_image.trace() - x.trace()));
  }
  report.add("completeness", "", completeness, tol.completeness);
  report.add("trace_preservation", "", trace_preservation, tol.trace);
  for (std::size_t n = 0; n < outcomes.size(); ++n) {
    const std::string label = outcome_label(outcomes[n].value);
    report.add("outcome_trace", label, outcome_trace[n], tol.trace);
    const ComplexMatrix c = choi(ins.components()[n]).matrix;
    const double violation = std::max({0.0, -min_eigenvalue(c), max_abs_diff(c, c.adjoint())});
    report.add("complete_positivity", label, violation, tol.positivity);
  }
  return report;
}

double outcome_probability(const Instrument& ins, double a, const DensityOperator& rho) {
  require_dim(ins, rho.dim(), "outcome_probability");
  const Superoperator* t = ins.component(a);
  if (t == nullptr) return 0.0;
  return checked_probability(trace_of_map(*t, rho.matrix()).real());
}

DensityOperator reduce(const Instrument& ins, double a, const DensityOperator& rho, double floor) {
  const double p = outcome_probability(ins, a, rho);
  if (p <= floor) throw ZeroProbabilityOutcome(a, p);
  const ComplexMatrix image = (*ins.component(a))(rho.matrix());
  ComplexMatrix state = hermitized(image);
  state *= 1.0 / state.trace().real();
  return DensityOperator(std::move(state));
}

ReducedState reduce_or_maximally_mixed(const Instrument& ins, double a, const DensityOperator& rho, double floor) {
  try {
    return {reduce(ins, a, rho, floor), true};
  } catch (const ZeroProbabilityOutcome&) {
    return {DensityOperator::maximally_mixed(ins.dim()), false};
  }
}

DensityOperator nonselective(const Instrument& ins, const DensityOperator& rho) {
  require_dim(ins, rho.dim(), "nonselective");
  ComplexMatrix state = hermitized(ins.total()(rho.matrix()));
  const double tr = state.trace().real();
  if (std::abs(tr - 1.0) > kDefaultTol) {
    throw NumericalConsistencyError("nonselective: operation is not trace preserving (trace " + std::to_string(tr) +
                                    ")");
  }
  state *= 1.0 / tr;
  return DensityOperator(std::move(state));
}

Superoperator luders_operation(const DiscreteObservable& obs) {
  Superoperator t = Superoperator::zero(obs.dim());
  for (const auto& o : obs.outcomes()) t += Superoperator::sandwich(o.projector, o.projector);
  return t;
}

Instrument luders_instrument(const DiscreteObservable& obs) {
  std::vector<Superoperator> components;
  for (const auto& o : obs.outcomes()) components.push_back(Superoperator::sandwich(o.projector, o.projector));
  return Instrument(obs, std::move(components), luders_operation(obs));
}

Instrument instrument_from_operation(const Superoperator& operation, const DiscreteObservable& obs, double tol) {
  if (operation.dim() != obs.dim()) throw InvalidArgument("instrument_from_operation: dimension mismatch");
  const std::vector<ComplexMatrix> probes = spanning_set(obs.dim());
  const auto& outcomes = obs.outcomes();

  std::vector<Superoperator> components;
  components.reserve(outcomes.size());
  for (const auto& o : outcomes) components.push_back(operation.compose(Superoperator::sandwich(o.projector, o.projector)));

  double worst_tp = 0.0;
  double worst_outcome = 0.0;
  std::string outcome_where;
  double worst_complete = 0.0;
  std::size_t complete_where = 0;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const ComplexMatrix& x = probes[k];
    const ComplexMatrix image = operation(x);
    worst_tp = std::max(worst_tp, std::abs(image.trace() - x.trace()));
    ComplexMatrix sum(obs.dim());
    for (std::size_t n = 0; n < outcomes.size(); ++n) {
      const ComplexMatrix part = components[n](x);
      sum += part;
      const double r = std::abs(part.trace() - trace_of_product(outcomes[n].projector, x));
      if (r > worst_outcome) {
        worst_outcome = r;
        outcome_where = "outcome " + outcome_label(outcomes[n].value) + ", spanning operator " + std::to_string(k);
      }
    }
    const double r = max_abs_diff(image, sum);
    if (r > worst_complete) {
      worst_complete = r;
      complete_where = k;
    }
  }
  if (worst_tp > tol) {
    throw InvalidArgument("instrument_from_operation: operation is not trace preserving (residual " +
                          std::to_string(worst_tp) + ")");
  }
  if (worst_outcome > tol) throw NotAMeasurement("outcome-trace condition fails at " + outcome_where, worst_outcome);
  if (worst_complete > tol) {
    throw NotAMeasurement("T(X) != sum_a T(E(a) X E(a)) at spanning operator " + std::to_string(complete_where),
                          worst_complete);
  }
  return Instrument(obs, std::move(components), operation);
}

VerificationReport verify_theorem1(const Instrument& ins, int trials, std::uint64_t seed, double tol) {
  const std::size_t d = ins.dim();
  std::vector<ComplexMatrix> tests;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) tests.push_back(ComplexMatrix::unit(d, i, j));
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) tests.push_back(random_trace_class(d, rng));

  std::vector<TraceClassDecomposition> decompositions;
  decompositions.reserve(tests.size());
  for (const ComplexMatrix& rho : tests) decompositions.push_back(decompose_trace_class(rho));

  VerificationReport report;
  const auto& outcomes = ins.observable().outcomes();
  const Superoperator& total = ins.total();
  for (std::size_t n = 0; n < outcomes.size(); ++n) {
    const ComplexMatrix& e = outcomes[n].projector;
    const Superoperator& component = ins.components()[n];
    double left = 0.0;
    double right = 0.0;
    double sandwich = 0.0;
    for (std::size_t k = 0; k < tests.size(); ++k) {
      const ComplexMatrix& rho = tests[k];
      // T_a on a general trace-class operator, by linearity over four states.
      const TraceClassDecomposition& dec = decompositions[k];
      ComplexMatrix image(d);
      for (std::size_t p = 0; p < 4; ++p)
        if (dec.lambdas[p] != 0.0) image.add_scaled(dec.kPhases[p] * dec.lambdas[p], component(dec.parts[p].matrix()));
      left = std::max(left, trace_norm(image - total(e * rho)));
      right = std::max(right, trace_norm(image - total(rho * e)));
      sandwich = std::max(sandwich, trace_norm(image - total(e * rho * e)));
    }
    const std::string label = outcome_label(outcomes[n].value);
    report.add("uniqueness_left", label, left, tol);
    report.add("uniqueness_right", label, right, tol);
    report.add("uniqueness_sandwich", label, sandwich, tol);
  }
  return report;
}

VerificationReport verify_dual_lemma(const Instrument& ins, int trials, std::uint64_t seed, double tol) {
  const std::size_t d = ins.dim();
  const ComplexMatrix one = ComplexMatrix::identity(d);
  const Superoperator total_dual = dual(ins.total());

  VerificationReport report;
  report.add("dual_unitality", "", operator_norm(total_dual(one) - one), tol);

  Rng rng(seed);
  std::vector<ComplexMatrix> xs;
  std::vector<ComplexMatrix> total_images;
  for (int t = 0; t < trials; ++t) {
    xs.push_back(random_bounded(d, rng));
    total_images.push_back(total_dual(xs.back()));
  }

  const auto& outcomes = ins.observable().outcomes();
  for (std::size_t n = 0; n < outcomes.size(); ++n) {
    const ComplexMatrix& e = outcomes[n].projector;
    const Superoperator component_dual = dual(ins.components()[n]);
    const std::string label = outcome_label(outcomes[n].value);
    report.add("dual_effect", label, operator_norm(component_dual(one) - e), tol);
    double left = 0.0;
    double right = 0.0;
    double sandwich = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const ComplexMatrix image = component_dual(xs[k]);
      const ComplexMatrix& tx = total_images[k];
      left = std::max(left, operator_norm(image - e * tx));
      right = std::max(right, operator_norm(image - tx * e));
      sandwich = std::max(sandwich, operator_norm(image - e * tx * e));
    }
    report.add("dual_left", label, left, tol);
    report.add("dual_right", label, right, tol);
    report.add("dual_sandwich", label, sandwich, tol);
  }
  return report;
}

}  // namespace rlab
