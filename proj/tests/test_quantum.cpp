#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracle.hpp"
#include "reduction_lab/errors.hpp"
#include "reduction_lab/linalg.hpp"
#include "reduction_lab/quantum.hpp"
#include "reduction_lab/random.hpp"

using namespace rlab;

namespace {

const ComplexMatrix kSigmaZ{{1, 0}, {0, -1}};

DensityOperator plus_state() {
  const double s = 1.0 / std::numbers::sqrt2;
  return DensityOperator(PureState(ComplexVector{s, s}));
}

// Random observable with `outcomes` distinct values on dimension `dim`: a
// random unitary basis split into consecutive blocks.
DiscreteObservable random_observable(std::size_t dim, std::size_t outcomes, Rng& rng) {
  const ComplexMatrix u = random_unitary(dim, rng);
  std::vector<DiscreteObservable::Outcome> list;
  for (std::size_t k = 0; k < outcomes; ++k) list.push_back({static_cast<double>(k) - 0.5, ComplexMatrix(dim)});
  for (std::size_t i = 0; i < dim; ++i) {
    const ComplexVector col = u.column(i);
    list[i % outcomes].projector += ComplexMatrix::outer(col, col);
  }
  return DiscreteObservable(std::move(list));
}

}  // namespace

TEST_CASE("pure states require unit norm") {
  CHECK_NOTHROW(PureState(ComplexVector{1, 0}));
  CHECK_THROWS_AS(PureState(ComplexVector{1, 1}), InvalidArgument);
  CHECK_THROWS_AS(PureState(ComplexVector{}), InvalidArgument);
  CHECK_THROWS_AS(PureState::normalized(ComplexVector{0, 0}), InvalidArgument);
  const PureState n = PureState::normalized(ComplexVector{3, cplx{0, 4}});
  CHECK(n.vector()[0] == cplx{0.6, 0});
  CHECK(n.vector()[1] == cplx{0, 0.8});
  CHECK(PureState::basis(3, 2).vector() == ComplexVector{0, 0, 1});
}

TEST_CASE("density operator invariants are enforced") {
  CHECK_NOTHROW(DensityOperator(ComplexMatrix::diagonal({0.25, 0.75})));
  CHECK_THROWS_AS(DensityOperator(ComplexMatrix::diagonal({0.5, 0.6})), InvalidArgument);
  CHECK_THROWS_AS(DensityOperator(ComplexMatrix::diagonal({1.5, -0.5})), InvalidArgument);
  CHECK_THROWS_AS(DensityOperator(ComplexMatrix{{0.5, 0.5}, {0, 0.5}}), InvalidArgument);
  CHECK(DensityOperator::maximally_mixed(4).matrix() == 0.25 * ComplexMatrix::identity(4));
}

TEST_CASE("mix examples") {
  const DensityOperator zero(PureState::basis(2, 0));
  const DensityOperator one(PureState::basis(2, 1));
  CHECK(max_abs_diff(mix(0.5, zero, one).matrix(), 0.5 * ComplexMatrix::identity(2)) == 0.0);
  Rng rng(1);
  const DensityOperator r1(random_density_matrix(3, rng));
  const DensityOperator r2(random_density_matrix(3, rng));
  CHECK(mix(1.0, r1, r2) == r1);
  const oracle::Mat expected =
      oracle::add(oracle::scaled(oracle::from(r1.matrix()), 0.3), oracle::scaled(oracle::from(r2.matrix()), 0.7));
  CHECK(oracle::max_diff(mix(0.3, r1, r2).matrix(), expected) <= 1e-15);
  CHECK_THROWS_AS(mix(1.5, r1, r2), InvalidArgument);
  CHECK_THROWS_AS(mix(-0.1, r1, r2), InvalidArgument);
  CHECK_THROWS_AS(mix(0.5, r1, zero), InvalidArgument);
}

TEST_CASE("observable validation") {
  const ComplexMatrix p0 = ComplexMatrix::unit(2, 0, 0), p1 = ComplexMatrix::unit(2, 1, 1);
  CHECK_NOTHROW(DiscreteObservable({{1.0, p0}, {-1.0, p1}}));
  CHECK_THROWS_AS(DiscreteObservable({}), InvalidArgument);
  CHECK_THROWS_AS(DiscreteObservable({{1.0, p0}, {1.0, p1}}), InvalidArgument);            // repeated value
  CHECK_THROWS_AS(DiscreteObservable({{1.0, p0}}), InvalidArgument);                        // incomplete
  CHECK_THROWS_AS(DiscreteObservable({{1.0, p0}, {2.0, p0}, {3.0, p1}}), InvalidArgument);  // overlapping
  CHECK_THROWS_AS(DiscreteObservable({{1.0, 2.0 * p0}, {2.0, p1}}), InvalidArgument);       // not idempotent
  CHECK_THROWS_AS(DiscreteObservable({{1.0, ComplexMatrix(2)}, {2.0, ComplexMatrix::identity(2)}}), InvalidArgument);

  const DiscreteObservable obs({{1.0, p0}, {-1.0, p1}});
  CHECK(obs.eigenvalues() == std::vector<double>{-1.0, 1.0});  // stored ascending
  CHECK(obs.index_of(1.0) == 1u);
  CHECK_FALSE(obs.index_of(0.5).has_value());
  CHECK(obs.projector(7.3) == ComplexMatrix(2));
  CHECK(obs.is_nondegenerate());
  CHECK(obs.to_hermitian() == kSigmaZ);
  CHECK(DiscreteObservable::trivial(3).size() == 1);
}

TEST_CASE("observable_from_hermitian examples") {
  const DiscreteObservable z = observable_from_hermitian(kSigmaZ);
  REQUIRE(z.size() == 2);
  CHECK(z.outcomes()[0].value == doctest::Approx(-1.0));
  CHECK(max_abs_diff(z.outcomes()[0].projector, ComplexMatrix::unit(2, 1, 1)) <= 1e-12);
  CHECK(z.outcomes()[1].value == doctest::Approx(1.0));
  CHECK(max_abs_diff(z.outcomes()[1].projector, ComplexMatrix::unit(2, 0, 0)) <= 1e-12);

  const DiscreteObservable id = observable_from_hermitian(ComplexMatrix::identity(2));
  REQUIRE(id.size() == 1);
  CHECK(id.outcomes()[0].value == doctest::Approx(1.0));
  CHECK(max_abs_diff(id.outcomes()[0].projector, ComplexMatrix::identity(2)) <= 1e-12);

  const DiscreteObservable near = observable_from_hermitian(ComplexMatrix::diagonal({1.0, 1.0 + 1e-14, 2.0}), 1e-9);
  REQUIRE(near.size() == 2);
  CHECK(near.outcomes()[0].projector.trace().real() == doctest::Approx(2.0));
  CHECK(near.outcomes()[1].projector.trace().real() == doctest::Approx(1.0));
  CHECK(near.outcomes()[1].value == 2.0);

  CHECK_THROWS_AS(observable_from_hermitian(ComplexMatrix{{0, 1}, {0, 0}}), InvalidArgument);
}

TEST_CASE("observable_from_hermitian reconstructs the matrix") {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial) % 6;
    const ComplexMatrix h = random_hermitian(n, rng);
    CHECK(max_abs_diff(observable_from_hermitian(h).to_hermitian(), h) <= 1e-10);
  }
}

TEST_CASE("born probability examples") {
  const DiscreteObservable z = observable_from_hermitian(kSigmaZ);
  CHECK(born_probability(z, 1.0, DensityOperator(PureState::basis(2, 0))) == doctest::Approx(1.0));
  CHECK(born_probability(z, 1.0, plus_state()) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(born_probability(z, 7.3, plus_state()) == 0.0);
  CHECK_THROWS_AS(born_probability(z, 1.0, DensityOperator::maximally_mixed(3)), InvalidArgument);
}

TEST_CASE("checked_probability clamps within the band and rejects outside it") {
  CHECK(checked_probability(-1e-11) == 0.0);
  CHECK(checked_probability(1.0 + 1e-11) == 1.0);
  CHECK(checked_probability(0.25) == 0.25);
  CHECK_THROWS_AS(checked_probability(-1e-9), NumericalConsistencyError);
  CHECK_THROWS_AS(checked_probability(1.0 + 1e-9), NumericalConsistencyError);
}

TEST_CASE("born probabilities sum to one and are affine in the state") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 2 + static_cast<std::size_t>(trial) % 4;
    const std::size_t outcomes = 1 + static_cast<std::size_t>(trial) % dim;
    const DiscreteObservable obs = random_observable(dim, outcomes, rng);
    const DensityOperator r1(random_density_matrix(dim, rng));
    const DensityOperator r2(random_density_matrix(dim, rng));
    const double alpha = rng.uniform();
    const DensityOperator mixed = mix(alpha, r1, r2);
    double total = 0.0;
    for (double a : obs.eigenvalues()) {
      const double p = born_probability(obs, a, r1);
      total += p;
      // independent oracle: Tr[E rho] from the naive product
      const cplx t = oracle::trace(oracle::mul(oracle::from(obs.projector(a)), oracle::from(r1.matrix())));
      CHECK(std::abs(p - t.real()) <= 1e-12);
      const double lhs = born_probability(obs, a, mixed);
      const double rhs = alpha * p + (1.0 - alpha) * born_probability(obs, a, r2);
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}
