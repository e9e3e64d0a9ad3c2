#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracle.hpp"
#include "reduction_lab/errors.hpp"
#include "reduction_lab/instrument.hpp"
#include "reduction_lab/linalg.hpp"
#include "reduction_lab/models.hpp"
#include "reduction_lab/random.hpp"
#include "reduction_lab/scenarios.hpp"

using namespace rlab;

namespace {

const ComplexMatrix kSigmaZ{{1, 0}, {0, -1}};
const ComplexMatrix kSigmaX{{0, 1}, {1, 0}};

DensityOperator plus_state() {
  const double s = 1.0 / std::numbers::sqrt2;
  return DensityOperator(PureState(ComplexVector{s, s}));
}

}  // namespace

TEST_CASE("joint distribution examples") {
  const DiscreteObservable z = observable_from_hermitian(kSigmaZ);
  const DiscreteObservable x = observable_from_hermitian(kSigmaX);
  const JointDistribution jd = joint_distribution(von_neumann_model(z, 2), x, plus_state());
  for (double a : z.eigenvalues())
    for (double b : x.eigenvalues()) CHECK(std::abs(jd.at(a, b) - 0.25) <= 1e-10);
  CHECK(jd.at(0.5, 1.0) == 0.0);
  CHECK(std::abs(jd.marginal(1.0) - 0.5) <= 1e-12);

  const auto cond = conditional_distribution(jd, 1.0);
  REQUIRE(cond.size() == 2);
  CHECK(std::abs(cond[0].second - 0.5) <= 1e-10);
  CHECK(std::abs(cond[1].second - 0.5) <= 1e-10);

  // eigenstate input: one row carries everything, conditionals are point masses
  const JointDistribution eig = joint_distribution(von_neumann_model(z, 2), z, DensityOperator(PureState::basis(2, 1)));
  CHECK(eig.at(-1.0, -1.0) == doctest::Approx(1.0));
  CHECK(eig.marginal(1.0) <= 1e-15);
  CHECK_THROWS_AS(conditional_distribution(eig, 1.0), ZeroProbabilityOutcome);
  const auto point = conditional_distribution(eig, -1.0);
  CHECK(point[0].second == doctest::Approx(1.0));
  CHECK(point[1].second <= 1e-15);
}

TEST_CASE("repeating the first observable gives a diagonal table") {
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const DiscreteObservable obs = observable_from_hermitian(random_hermitian(3, rng));
    const DensityOperator rho(random_density_matrix(3, rng));
    const JointDistribution jd = joint_distribution(luders_instrument(obs), obs, rho);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (i != j) CHECK(std::abs(jd.table()[i][j]) <= 1e-12);
  }
}

TEST_CASE("joint table entries match Tr[E^X(x) T_a(rho)] from the dilation oracle") {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const DiscreteObservable first = observable_from_hermitian(random_hermitian(2, rng));
    const DiscreteObservable second = observable_from_hermitian(random_hermitian(2, rng));
    const MeasurementModel model = random_faithful_model(first, 3, rng.fork());
    const DensityOperator rho(random_density_matrix(2, rng));
    const JointDistribution jd = joint_distribution(model, second, rho);
    for (const auto& a : first.outcomes()) {
      const oracle::Mat image =
          oracle::dilation(oracle::from(model.unitary()), oracle::from(a.projector), oracle::from(rho.matrix()),
                           oracle::from(model.apparatus_state().matrix()), oracle::identity(3), 2, 3);
      for (const auto& x : second.outcomes()) {
        const double expected = oracle::trace(oracle::mul(oracle::from(x.projector), image)).real();
        CHECK(std::abs(jd.at(a.value, x.value) - expected) <= 1e-10);
      }
    }
  }
}

TEST_CASE("joint distribution invariants on random faithful models") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t ds = 2 + static_cast<std::size_t>(trial) % 3;
    const DiscreteObservable first = observable_from_hermitian(random_hermitian(ds, rng));
    const DiscreteObservable second = observable_from_hermitian(random_hermitian(ds, rng));
    const MeasurementModel model = random_faithful_model(first, ds + 1, rng.fork());
    const Instrument ins = instrument_of(model);
    const DensityOperator r1(random_density_matrix(ds, rng)), r2(random_density_matrix(ds, rng));
    const double alpha = rng.uniform();

    const JointDistribution j1 = joint_distribution(ins, second, r1);
    const JointDistribution j2 = joint_distribution(ins, second, r2);
    const JointDistribution jm = joint_distribution(ins, second, mix(alpha, r1, r2));
    const auto product = joint_product_form(ins, second, r1);
    double total = 0.0;
    for (std::size_t i = 0; i < first.size(); ++i) {
      const double a = first.outcomes()[i].value;
      double row = 0.0;
      for (std::size_t j = 0; j < second.size(); ++j) {
        row += j1.table()[i][j];
        CHECK(std::abs(product[i][j] - j1.table()[i][j]) <= 1e-10);
        CHECK(std::abs(jm.table()[i][j] - (alpha * j1.table()[i][j] + (1 - alpha) * j2.table()[i][j])) <= 1e-10);
      }
      total += row;
      CHECK(std::abs(row - born_probability(first, a, r1)) <= 1e-10);
      double cond_sum = 0.0;
      for (const auto& [x, p] : conditional_distribution(j1, a)) cond_sum += p;
      CHECK(std::abs(cond_sum - 1.0) <= 1e-10);
    }
    CHECK(std::abs(total - 1.0) <= 1e-10);
  }
}

TEST_CASE("joint distribution refuses unfaithful models and mismatched dimensions") {
  const DiscreteObservable z = observable_from_hermitian(kSigmaZ);
  CHECK_THROWS_AS(joint_distribution(random_biased_model(z, 2, 3), z, plus_state()), NotAMeasurement);
  CHECK_THROWS_AS(joint_distribution(luders_instrument(z), DiscreteObservable::trivial(3), plus_state()),
                  InvalidArgument);
  CHECK_THROWS_AS(JointDistribution(z, z, {{1.0}}), InvalidArgument);
}

TEST_CASE("trace distance") {
  CHECK(trace_distance(ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 1, 1)) == doctest::Approx(1.0));
  CHECK(trace_distance(ComplexMatrix::unit(2, 0, 0), plus_state().matrix()) ==
        doctest::Approx(1.0 / std::numbers::sqrt2));
}

TEST_CASE("nonuniqueness exhibit in two dimensions") {
  const DecompositionExhibit ex = nonuniqueness_exhibit();
  CHECK(max_abs_diff(ex.mixed_state.matrix(), 0.5 * ComplexMatrix::identity(2)) <= 1e-12);
  REQUIRE(ex.decompositions.size() == 2);
  for (const PureDecomposition& d : ex.decompositions) CHECK(max_abs_diff(d.reassemble(), ex.mixed_state.matrix()) <= 1e-12);
  CHECK(ex.min_cross_distance() >= 0.5);
  CHECK(ex.min_cross_distance() == doctest::Approx(1.0 / std::numbers::sqrt2));

  const double s = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(ex.input.vector()[0] - s) <= 1e-15);
  CHECK(std::abs(ex.input.vector()[1] - s) <= 1e-15);
  REQUIRE(ex.instrument_components.size() == 2);
  for (const auto& [a, m] : ex.instrument_components) {
    const ComplexMatrix expected = a > 0 ? 0.5 * ComplexMatrix::unit(2, 0, 0) : 0.5 * ComplexMatrix::unit(2, 1, 1);
    CHECK(max_abs_diff(m, expected) <= 1e-10);
  }
}

TEST_CASE("nonuniqueness exhibit in three dimensions") {
  const DecompositionExhibit ex = nonuniqueness_exhibit(3);
  CHECK(ex.observable.eigenvalues() == std::vector<double>{-2.0, 0.0, 2.0});
  for (const PureDecomposition& d : ex.decompositions) CHECK(max_abs_diff(d.reassemble(), ex.mixed_state.matrix()) <= 1e-12);
  CHECK(ex.min_cross_distance() >= 0.5);
  // T_{a_n}(psi) = |<phi_n|psi>|^2 |phi_n><phi_n|
  const auto& weights = ex.decompositions[0].weights;
  for (const auto& [a, m] : ex.instrument_components) {
    const std::size_t n = static_cast<std::size_t>((2.0 - a) / 2.0);
    CHECK(max_abs_diff(m, weights[n] * ComplexMatrix::unit(3, n, n)) <= 1e-10);
  }
  CHECK_THROWS_AS(nonuniqueness_exhibit(1), InvalidArgument);
}
