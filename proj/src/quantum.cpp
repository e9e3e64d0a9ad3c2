#include "reduction_lab/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "reduction_lab/errors.hpp"
#include "reduction_lab/linalg.hpp"

namespace rlab {
namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

PureState::PureState(ComplexVector v) : vector_(std::move(v)) {
  if (vector_.empty()) throw InvalidArgument("pure state must have dimension >= 1");
  const double n = vector_norm(vector_);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kTraceTol) {
    throw InvalidArgument("pure state vector must have unit norm (norm = " + num(n) + ")");
  }
}

PureState PureState::normalized(ComplexVector v) {
  const double n = vector_norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("cannot normalize a zero or non-finite vector");
  for (cplx& z : v) z /= n;
  return PureState(std::move(v));
}

PureState PureState::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw InvalidArgument("basis state index out of range");
  ComplexVector v(dim);
  v[k] = 1.0;
  return PureState(std::move(v));
}

DensityOperator::DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {
  const double herm = max_abs_diff(matrix_, matrix_.adjoint());
  if (herm > kDefaultTol) throw InvalidArgument("density operator must be Hermitian (defect " + num(herm) + ")");
  const cplx tr = matrix_.trace();
  if (std::abs(tr.real() - 1.0) > kTraceTol || std::abs(tr.imag()) > kTraceTol) {
    throw InvalidArgument("density operator must have unit trace (trace " + num(tr.real()) + ")");
  }
  const double lo = min_eigenvalue(matrix_);
  if (lo < -kDefaultTol) {
    throw InvalidArgument("density operator must be positive semidefinite (eigenvalue " + num(lo) + ")");
  }
}

DensityOperator::DensityOperator(const PureState& psi) : DensityOperator(psi.projector()) {}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m *= 1.0 / static_cast<double>(dim);
  return DensityOperator(std::move(m));
}

DensityOperator mix(double alpha, const DensityOperator& rho1, const DensityOperator& rho2) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("mix: alpha must lie in [0, 1], got " + num(alpha));
  if (rho1.dim() != rho2.dim()) throw InvalidArgument("mix: dimension mismatch");
  ComplexMatrix m = rho1.matrix() * alpha;
  m.add_scaled(1.0 - alpha, rho2.matrix());
  return DensityOperator(std::move(m));
}

DiscreteObservable::DiscreteObservable(std::vector<Outcome> outcomes, double tol) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw InvalidArgument("observable needs at least one outcome");
  std::sort(outcomes_.begin(), outcomes_.end(), [](const Outcome& x, const Outcome& y) { return x.value < y.value; });

  const std::size_t d = outcomes_.front().projector.dim();
  ComplexMatrix sum(d);
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    const Outcome& o = outcomes_[i];
    if (!std::isfinite(o.value)) throw InvalidArgument("observable eigenvalues must be finite");
    if (o.projector.dim() != d) throw InvalidArgument("observable projectors must share one dimension");
    if (i > 0 && outcomes_[i - 1].value == o.value) {
      throw InvalidArgument("observable eigenvalues must be pairwise distinct (repeated " + num(o.value) + ")");
    }
    const ComplexMatrix& p = o.projector;
    if (max_abs_diff(p, p.adjoint()) > tol) {
      throw InvalidArgument("projector for eigenvalue " + num(o.value) + " is not Hermitian");
    }
    if (max_abs_diff(p * p, p) > tol) {
      throw InvalidArgument("projector for eigenvalue " + num(o.value) + " is not idempotent");
    }
    if (p.trace().real() < 0.5) throw InvalidArgument("projector for eigenvalue " + num(o.value) + " is zero");
    for (std::size_t j = 0; j < i; ++j) {
      if ((outcomes_[j].projector * p).max_abs() > tol) {
        throw InvalidArgument("projectors for eigenvalues " + num(outcomes_[j].value) + " and " + num(o.value) +
                              " are not orthogonal");
      }
    }
    sum += p;
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(d)) > tol) {
    throw InvalidArgument("observable projectors do not sum to the identity");
  }
}

DiscreteObservable DiscreteObservable::trivial(std::size_t dim, double value) {
  return DiscreteObservable({Outcome{value, ComplexMatrix::identity(dim)}});
}

std::vector<double> DiscreteObservable::eigenvalues() const {
  std::vector<double> v;
  v.reserve(outcomes_.size());
  for (const Outcome& o : outcomes_) v.push_back(o.value);
  return v;
}

std::optional<std::size_t> DiscreteObservable::index_of(double a) const noexcept {
  for (std::size_t i = 0; i < outcomes_.size(); ++i)
    if (outcomes_[i].value == a) return i;
  return std::nullopt;
}

ComplexMatrix DiscreteObservable::projector(double a) const {
  if (auto i = index_of(a)) return outcomes_[*i].projector;
  return ComplexMatrix(dim());
}

bool DiscreteObservable::is_nondegenerate() const { return outcomes_.size() == dim(); }

ComplexMatrix DiscreteObservable::to_hermitian() const {
  ComplexMatrix h(dim());
  for (const Outcome& o : outcomes_) h.add_scaled(o.value, o.projector);
  return h;
}

DiscreteObservable observable_from_hermitian(const ComplexMatrix& h, double degeneracy_tol) {
  const EigenDecomposition eig = hermitian_eig(h);
  std::vector<DiscreteObservable::Outcome> outcomes;
  std::size_t start = 0;
  const std::size_t n = eig.values.size();
  for (std::size_t k = 1; k <= n; ++k) {
    if (k < n && eig.values[k] - eig.values[k - 1] <= degeneracy_tol) continue;
    ComplexMatrix p(h.dim());
    double value = 0.0;
    for (std::size_t m = start; m < k; ++m) {
      p += ComplexMatrix::outer(eig.vectors[m], eig.vectors[m]);
      value += eig.values[m];
    }
    outcomes.push_back({value / static_cast<double>(k - start), std::move(p)});
    start = k;
  }
  return DiscreteObservable(std::move(outcomes));
}

double checked_probability(double p, double tol) {
  if (!(p >= -tol && p <= 1.0 + tol)) {
    throw NumericalConsistencyError("probability " + num(p) + " lies outside [0, 1] beyond tolerance");
  }
  return std::clamp(p, 0.0, 1.0);
}

double born_probability(const DiscreteObservable& obs, double a, const DensityOperator& rho) {
  if (obs.dim() != rho.dim()) throw InvalidArgument("born_probability: dimension mismatch");
  const auto i = obs.index_of(a);
  if (!i) return 0.0;
  return checked_probability(trace_of_product(obs.outcomes()[*i].projector, rho.matrix()).real());
}

}  // namespace rlab
