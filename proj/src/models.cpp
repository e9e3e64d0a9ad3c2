#include "reduction_lab/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reduction_lab/errors.hpp"
#include "reduction_lab/linalg.hpp"
#include "reduction_lab/random.hpp"

namespace rlab {
namespace {

// X -> Tr_A[(1 (x) F) U (P X P (x) sigma) U^dagger (1 (x) F)], with P or F
// omitted when null.
Superoperator dilation_map(const MeasurementModel& model, const ComplexMatrix* pre, const ComplexMatrix* probe) {
  const std::size_t ds = model.dim_s();
  const std::size_t da = model.dim_a();
  const ComplexMatrix& u = model.unitary();
  const ComplexMatrix u_dag = u.adjoint();
  const ComplexMatrix& sigma = model.apparatus_state().matrix();
  const std::optional<ComplexMatrix> lift =
      probe ? std::optional<ComplexMatrix>(tensor(ComplexMatrix::identity(ds), *probe)) : std::nullopt;

  return Superoperator::from_function(ds, [&](const ComplexMatrix& x) {
    const ComplexMatrix input = pre ? (*pre) * x * (*pre) : x;
    ComplexMatrix joint = u * tensor(input, sigma) * u_dag;
    if (lift) joint = (*lift) * joint * (*lift);
    return partial_trace_apparatus(joint, ds, da);
  });
}

ComplexVector first_column_of_projector(const ComplexMatrix& p) {
  std::size_t best = 0;
  double best_norm = -1.0;
  for (std::size_t c = 0; c < p.dim(); ++c) {
    const double n = vector_norm(p.column(c));
    if (n > best_norm) {
      best_norm = n;
      best = c;
    }
  }
  ComplexVector v = p.column(best);
  for (cplx& z : v) z /= best_norm;
  return v;
}

// Orthonormal basis of the range of a projector.
std::vector<ComplexVector> range_basis(const ComplexMatrix& projector) {
  const EigenDecomposition eig = hermitian_eig(projector);
  std::vector<ComplexVector> basis;
  for (std::size_t k = 0; k < eig.values.size(); ++k)
    if (eig.values[k] > 0.5) basis.push_back(eig.vectors[k]);
  return basis;
}

ComplexVector kron(std::span<const cplx> a, std::span<const cplx> b) {
  ComplexVector r(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) r[i * b.size() + k] = a[i] * b[k];
  return r;
}

}  // namespace

MeasurementModel::MeasurementModel(DiscreteObservable observable, DensityOperator apparatus_state,
                                   ComplexMatrix unitary, std::optional<DiscreteObservable> probe)
    : observable_(std::move(observable)),
      apparatus_state_(std::move(apparatus_state)),
      unitary_(std::move(unitary)),
      probe_(std::move(probe)) {
  const std::size_t joint = dim_s() * dim_a();
  if (unitary_.dim() != joint) {
    throw InvalidArgument("unitary must act on the composite space of dimension " + std::to_string(joint) +
                          ", got " + std::to_string(unitary_.dim()));
  }
  if (!is_unitary(unitary_, kDefaultTol)) throw InvalidArgument("interaction operator is not unitary");
  if (probe_) {
    if (probe_->dim() != dim_a()) throw InvalidArgument("probe observable must act on the apparatus space");
    if (probe_->eigenvalues() != observable_.eigenvalues()) {
      throw InvalidArgument("probe observable must have the same eigenvalues as the measured observable");
    }
  }
}

MeasurementModel MeasurementModel::with_unitary(ComplexMatrix unitary) const {
  return {observable_, apparatus_state_, std::move(unitary), probe_};
}

MeasurementModel MeasurementModel::with_probe(std::optional<DiscreteObservable> probe) const {
  return {observable_, apparatus_state_, unitary_, std::move(probe)};
}

MeasurementModel MeasurementModel::with_apparatus_state(DensityOperator sigma) const {
  return {observable_, std::move(sigma), unitary_, probe_};
}

VerificationReport ConsistencyReport::to_report() const {
  VerificationReport report;
  for (const Entry& e : residuals) report.add("probe_consistency", outcome_label(e.outcome), e.residual, tolerance);
  return report;
}

ConsistencyReport probe_consistency(const MeasurementModel& model, double tol) {
  if (!model.probe()) throw MissingProbe();
  const std::size_t ds = model.dim_s();
  const std::size_t da = model.dim_a();
  const ComplexMatrix& u = model.unitary();
  const ComplexMatrix u_dag = u.adjoint();
  const ComplexMatrix sigma_lift = tensor(ComplexMatrix::identity(ds), model.apparatus_state().matrix());

  ConsistencyReport report;
  report.tolerance = tol;
  const auto& probe_outcomes = model.probe()->outcomes();
  for (const auto& o : model.observable().outcomes()) {
    const ComplexMatrix& probe_projector = probe_outcomes[*model.probe()->index_of(o.value)].projector;
    const ComplexMatrix heisenberg = u_dag * tensor(ComplexMatrix::identity(ds), probe_projector) * u;
    const ComplexMatrix effect = partial_trace_apparatus(heisenberg * sigma_lift, ds, da);
    const double r = operator_norm(effect - o.projector);
    report.residuals.push_back({o.value, r});
    if (r > report.worst_residual || report.residuals.size() == 1) {
      report.worst_residual = r;
      report.worst_outcome = o.value;
    }
  }
  report.pass = report.worst_residual <= tol;
  return report;
}

Superoperator operation_of(const MeasurementModel& model) { return dilation_map(model, nullptr, nullptr); }

Instrument instrument_of(const MeasurementModel& model, double tol) {
  const Superoperator total = operation_of(model);
  if (model.probe()) {
    const ConsistencyReport consistency = probe_consistency(model, tol);
    if (!consistency.pass) {
      throw NotAMeasurement("probe statistics differ from the Born rule at outcome " +
                                outcome_label(consistency.worst_outcome),
                            consistency.worst_residual);
    }
  } else {
    // Validates T = sum_a T(E . E); throws NotAMeasurement otherwise.
    instrument_from_operation(total, model.observable(), tol);
  }
  std::vector<Superoperator> components;
  for (const auto& o : model.observable().outcomes()) components.push_back(dilation_map(model, &o.projector, nullptr));
  return Instrument(model.observable(), std::move(components), total);
}

Instrument probe_instrument_of(const MeasurementModel& model, double tol) {
  const ConsistencyReport consistency = probe_consistency(model, tol);
  if (!consistency.pass) {
    throw NotAMeasurement("probe statistics differ from the Born rule at outcome " +
                              outcome_label(consistency.worst_outcome),
                          consistency.worst_residual);
  }
  const DiscreteObservable& probe = *model.probe();
  std::vector<Superoperator> components;
  for (const auto& o : model.observable().outcomes()) {
    const ComplexMatrix& f = probe.outcomes()[*probe.index_of(o.value)].projector;
    components.push_back(dilation_map(model, nullptr, &f));
  }
  return Instrument(model.observable(), std::move(components), operation_of(model));
}

MeasurementModel von_neumann_model(const DiscreteObservable& observable, std::size_t dim_a,
                                   const ComplexMatrix& pointer_basis) {
  if (!observable.is_nondegenerate()) {
    throw UnsupportedDegenerate("the pointer-basis construction needs a nondegenerate observable");
  }
  const std::size_t outcomes = observable.size();
  if (dim_a < outcomes) throw InvalidArgument("apparatus dimension must be at least the number of outcomes");
  if (pointer_basis.dim() != dim_a || !is_unitary(pointer_basis, kDefaultTol)) {
    throw InvalidArgument("pointer basis must be a unitary matrix on the apparatus space");
  }

  const std::size_t ds = observable.dim();
  ComplexMatrix u(ds * dim_a);
  for (std::size_t n = 0; n < outcomes; ++n) {
    const ComplexVector phi = first_column_of_projector(observable.outcomes()[n].projector);
    // W_n = Xi * cyclic shift by n, so that W_n |0> = xi_n.
    ComplexMatrix w(dim_a);
    for (std::size_t k = 0; k < dim_a; ++k)
      for (std::size_t r = 0; r < dim_a; ++r) w(r, k) = pointer_basis(r, (k + n) % dim_a);
    u += tensor(ComplexMatrix::outer(phi, phi), w);
  }

  std::vector<DiscreteObservable::Outcome> probe;
  for (std::size_t n = 0; n < outcomes; ++n) {
    const ComplexVector xi = pointer_basis.column(n);
    probe.push_back({observable.outcomes()[n].value, ComplexMatrix::outer(xi, xi)});
  }
  for (std::size_t k = outcomes; k < dim_a; ++k) {
    const ComplexVector xi = pointer_basis.column(k);
    probe.front().projector += ComplexMatrix::outer(xi, xi);
  }

  return MeasurementModel(observable, DensityOperator(PureState::basis(dim_a, 0)), std::move(u),
                          DiscreteObservable(std::move(probe)));
}

MeasurementModel von_neumann_model(const DiscreteObservable& observable, std::size_t dim_a) {
  return von_neumann_model(observable, dim_a, ComplexMatrix::identity(dim_a));
}

MeasurementModel von_neumann_model(const DiscreteObservable& observable, std::size_t dim_a, std::uint64_t seed) {
  Rng rng(seed);
  return von_neumann_model(observable, dim_a, random_unitary(dim_a, rng));
}

std::vector<std::size_t> sector_sizes(std::size_t dim_a, std::size_t outcomes) {
  if (outcomes == 0 || dim_a < outcomes) {
    throw InvalidArgument("apparatus dimension " + std::to_string(dim_a) + " is too small for " +
                          std::to_string(outcomes) + " outcome sectors");
  }
  std::vector<std::size_t> sizes(outcomes, dim_a / outcomes);
  for (std::size_t k = 0; k < dim_a % outcomes; ++k) ++sizes[k];
  return sizes;
}

MeasurementModel random_faithful_model(const DiscreteObservable& observable, std::size_t dim_a, std::uint64_t seed,
                                       std::size_t apparatus_rank) {
  const std::size_t outcomes = observable.size();
  const std::vector<std::size_t> sizes = sector_sizes(dim_a, outcomes);
  if (apparatus_rank == 0 || apparatus_rank > sizes.back()) {
    throw InvalidArgument("apparatus rank must lie in [1, " + std::to_string(sizes.back()) + "]");
  }
  const std::size_t ds = observable.dim();
  const std::size_t joint = ds * dim_a;
  Rng rng(seed);

  std::vector<ComplexVector> domain;
  std::vector<ComplexVector> image;
  std::vector<DiscreteObservable::Outcome> probe;
  std::size_t offset = 0;
  for (std::size_t n = 0; n < outcomes; ++n) {
    const auto& o = observable.outcomes()[n];
    for (const ComplexVector& v : range_basis(o.projector)) {
      for (std::size_t j = 0; j < apparatus_rank; ++j) {
        ComplexVector e(dim_a);
        e[j] = 1.0;
        domain.push_back(kron(v, e));
      }
    }
    // Random orthonormal images supported on H_S (x) sector(n).
    std::vector<ComplexVector> sector_images;
    const std::size_t count = domain.size() - image.size();
    for (std::size_t c = 0; c < count; ++c) {
      ComplexVector w(joint);
      for (std::size_t i = 0; i < ds; ++i)
        for (std::size_t s = offset; s < offset + sizes[n]; ++s) w[i * dim_a + s] = rng.complex_normal();
      sector_images.push_back(std::move(w));
    }
    for (ComplexVector& w : gram_schmidt(std::move(sector_images))) image.push_back(std::move(w));

    ComplexMatrix q(dim_a);
    for (std::size_t s = offset; s < offset + sizes[n]; ++s) q(s, s) = 1.0;
    probe.push_back({o.value, std::move(q)});
    offset += sizes[n];
  }

  // Complement: |i> (x) |j> for j >= rank is mapped onto a deterministic
  // completion of the image family.
  for (std::size_t i = 0; i < ds; ++i)
    for (std::size_t j = apparatus_rank; j < dim_a; ++j) {
      ComplexVector e(joint);
      e[i * dim_a + j] = 1.0;
      domain.push_back(std::move(e));
    }
  image = orthonormal_completion(image, joint);

  ComplexMatrix u(joint);
  for (std::size_t k = 0; k < joint; ++k) u += ComplexMatrix::outer(image[k], domain[k]);

  ComplexMatrix sigma(dim_a);
  if (apparatus_rank == 1) {
    sigma(0, 0) = 1.0;
  } else {
    const ComplexMatrix block = random_density_matrix(apparatus_rank, rng);
    for (std::size_t r = 0; r < apparatus_rank; ++r)
      for (std::size_t c = 0; c < apparatus_rank; ++c) sigma(r, c) = block(r, c);
  }

  return MeasurementModel(observable, DensityOperator(std::move(sigma)), std::move(u),
                          DiscreteObservable(std::move(probe)));
}

MeasurementModel swap_probe_outcomes(const MeasurementModel& model, std::size_t i, std::size_t j) {
  if (!model.probe()) throw MissingProbe();
  const auto& outcomes = model.probe()->outcomes();
  if (i == j) throw InvalidArgument("swap_probe_outcomes: identical outcomes give an unbiased model");
  if (i >= outcomes.size() || j >= outcomes.size()) throw InvalidArgument("swap_probe_outcomes: index out of range");
  std::vector<DiscreteObservable::Outcome> swapped = outcomes;
  std::swap(swapped[i].projector, swapped[j].projector);
  return model.with_probe(DiscreteObservable(std::move(swapped)));
}

MeasurementModel random_biased_model(const DiscreteObservable& observable, std::size_t dim_a, std::uint64_t seed) {
  if (observable.size() < 2) throw InvalidArgument("a biased model needs an observable with at least two outcomes");
  return swap_probe_outcomes(random_faithful_model(observable, dim_a, seed), 0, 1);
}

}  // namespace rlab
