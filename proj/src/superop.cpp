#include "reduction_lab/superop.hpp"

#include <cmath>
#include <string>

#include "reduction_lab/errors.hpp"
#include "reduction_lab/linalg.hpp"
#include "reduction_lab/random.hpp"

namespace rlab {
namespace {

void require_dim(const Superoperator& s, const ComplexMatrix& m, const char* op) {
  if (s.dim() != m.dim()) {
    throw InvalidArgument(std::string(op) + ": operator dimension " + std::to_string(m.dim()) +
                          " does not match map dimension " + std::to_string(s.dim()));
  }
}

}  // namespace

ComplexVector vectorize(const ComplexMatrix& x) {
  const std::size_t d = x.dim();
  ComplexVector v(d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) v[i + j * d] = x(i, j);
  return v;
}

ComplexMatrix devectorize(std::span<const cplx> v, std::size_t dim) {
  if (v.size() != dim * dim) throw InvalidArgument("devectorize: length is not dim^2");
  ComplexMatrix x(dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) x(i, j) = v[i + j * dim];
  return x;
}

Superoperator::Superoperator(std::size_t dim, ComplexMatrix rep) : dim_(dim), rep_(std::move(rep)) {
  if (dim == 0 || rep_.dim() != dim * dim) {
    throw InvalidArgument("superoperator on dimension " + std::to_string(dim) + " needs a " +
                          std::to_string(dim * dim) + "-dimensional representation");
  }
}

Superoperator Superoperator::identity(std::size_t dim) { return {dim, ComplexMatrix::identity(dim * dim)}; }

Superoperator Superoperator::zero(std::size_t dim) { return {dim, ComplexMatrix(dim * dim)}; }

Superoperator Superoperator::from_function(std::size_t dim,
                                           const std::function<ComplexMatrix(const ComplexMatrix&)>& f) {
  ComplexMatrix rep(dim * dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) {
      const ComplexMatrix image = f(ComplexMatrix::unit(dim, i, j));
      if (image.dim() != dim) throw InvalidArgument("from_function: image has the wrong dimension");
      const std::size_t col = i + j * dim;
      for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t r = 0; r < dim; ++r) rep(r + c * dim, col) = image(r, c);
    }
  return {dim, std::move(rep)};
}

Superoperator Superoperator::sandwich(const ComplexMatrix& left, const ComplexMatrix& right) {
  if (left.dim() != right.dim()) throw InvalidArgument("sandwich: dimension mismatch");
  return {left.dim(), tensor(right.transpose(), left)};
}

Superoperator Superoperator::conjugation(const ComplexMatrix& k) { return sandwich(k, k.adjoint()); }

Superoperator Superoperator::from_kraus(std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) throw InvalidArgument("from_kraus: empty Kraus family");
  Superoperator s = zero(kraus.front().dim());
  for (const ComplexMatrix& k : kraus) s += conjugation(k);
  return s;
}

ComplexMatrix Superoperator::operator()(const ComplexMatrix& x) const {
  require_dim(*this, x, "apply");
  const ComplexVector v = vectorize(x);
  return devectorize(rep_ * std::span<const cplx>(v), dim_);
}

Superoperator Superoperator::compose(const Superoperator& other) const {
  if (other.dim_ != dim_) throw InvalidArgument("compose: dimension mismatch");
  return {dim_, rep_ * other.rep_};
}

Superoperator& Superoperator::operator+=(const Superoperator& other) {
  if (other.dim_ != dim_) throw InvalidArgument("superoperator sum: dimension mismatch");
  rep_ += other.rep_;
  return *this;
}

Superoperator& Superoperator::operator-=(const Superoperator& other) {
  if (other.dim_ != dim_) throw InvalidArgument("superoperator difference: dimension mismatch");
  rep_ -= other.rep_;
  return *this;
}

Superoperator operator*(cplx s, Superoperator a) {
  a.rep_ *= s;
  return a;
}

ComplexMatrix apply(const Superoperator& s, const ComplexMatrix& m) { return s(m); }

cplx trace_of_map(const Superoperator& s, const ComplexMatrix& rho) { return s(rho).trace(); }

double map_distance(const Superoperator& a, const Superoperator& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("map_distance: dimension mismatch");
  return max_abs_diff(a.rep(), b.rep());
}

bool maps_equal(const Superoperator& a, const Superoperator& b, double tol) { return map_distance(a, b) <= tol; }

Superoperator dual(const Superoperator& s) {
  // vec(s*(X)) = P S^T P vec(X), P the swap (i + j d) <-> (j + i d).
  const std::size_t d = s.dim();
  const auto swap = [d](std::size_t p) { return (p / d) + (p % d) * d; };
  ComplexMatrix rep(d * d);
  for (std::size_t p = 0; p < d * d; ++p)
    for (std::size_t q = 0; q < d * d; ++q) rep(p, q) = s.rep()(swap(q), swap(p));
  return {d, std::move(rep)};
}

ChoiMatrix choi(const Superoperator& s) {
  const std::size_t d = s.dim();
  ComplexMatrix c(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) c(i * d + k, j * d + l) = s.rep()(k + l * d, i + j * d);
  return {d, std::move(c)};
}

Superoperator from_choi(const ChoiMatrix& c) {
  const std::size_t d = c.dim;
  if (c.matrix.dim() != d * d) throw InvalidArgument("from_choi: Choi matrix must be d^2 x d^2");
  ComplexMatrix rep(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) rep(k + l * d, i + j * d) = c.matrix(i * d + k, j * d + l);
  return {d, std::move(rep)};
}

std::vector<ComplexMatrix> kraus_from_choi(const ChoiMatrix& c, double rank_tol) {
  const std::size_t d = c.dim;
  if (c.matrix.dim() != d * d) throw InvalidArgument("kraus_from_choi: Choi matrix must be d^2 x d^2");
  if (max_abs_diff(c.matrix, c.matrix.adjoint()) > rank_tol) throw NotCompletelyPositive(min_eigenvalue(c.matrix));
  const EigenDecomposition eig = hermitian_eig(c.matrix);
  if (eig.values.front() < -rank_tol) throw NotCompletelyPositive(eig.values.front());

  std::vector<ComplexMatrix> kraus;
  // Largest weights first.
  for (std::size_t n = eig.values.size(); n-- > 0;) {
    const double lambda = eig.values[n];
    if (lambda <= rank_tol) break;
    const double scale = std::sqrt(lambda);
    ComplexMatrix k(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t r = 0; r < d; ++r) k(r, i) = scale * eig.vectors[n][i * d + r];
    kraus.push_back(std::move(k));
  }
  return kraus;
}

bool is_completely_positive(const Superoperator& s, double tol) { return is_psd(choi(s).matrix, tol); }

bool is_positive_sampled(const Superoperator& s, int trials, std::uint64_t seed, double tol) {
  if (trials < 1) throw InvalidArgument("is_positive_sampled: trials must be >= 1");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const ComplexVector psi = random_unit_vector(s.dim(), rng);
    if (!is_psd(s(ComplexMatrix::outer(psi, psi)), tol)) return false;
  }
  return true;
}

ComplexMatrix TraceClassDecomposition::reassemble() const {
  ComplexMatrix m(parts.front().dim());
  for (std::size_t k = 0; k < 4; ++k) {
    if (lambdas[k] != 0.0) m.add_scaled(kPhases[k] * lambdas[k], parts[k].matrix());
  }
  return m;
}

TraceClassDecomposition decompose_trace_class(const ComplexMatrix& m) {
  const std::size_t d = m.dim();
  ComplexMatrix herm = m + m.adjoint();
  herm *= 0.5;
  ComplexMatrix anti = m - m.adjoint();
  anti *= cplx{0.0, -0.5};  // (m - m^dagger) / 2i

  const JordanParts h = jordan_decomposition(herm);
  const JordanParts k = jordan_decomposition(anti);
  const std::array<const ComplexMatrix*, 4> pieces{&h.positive, &h.negative, &k.positive, &k.negative};

  // Parts whose weight is roundoff relative to m are dropped.
  const double cutoff = 1e-14 * m.frobenius_norm();
  const DensityOperator placeholder = DensityOperator::maximally_mixed(d);
  TraceClassDecomposition out{{0.0, 0.0, 0.0, 0.0}, {placeholder, placeholder, placeholder, placeholder}};
  for (std::size_t n = 0; n < 4; ++n) {
    const double weight = pieces[n]->trace().real();
    if (weight <= cutoff || weight == 0.0) continue;
    ComplexMatrix normalized = *pieces[n] * (1.0 / weight);
    out.lambdas[n] = weight;
    out.parts[n] = DensityOperator(std::move(normalized));
  }
  return out;
}

}  // namespace rlab
