#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "reduction_lab/errors.hpp"
#include "reduction_lab/linalg.hpp"
#include "reduction_lab/random.hpp"
#include "reduction_lab/superop.hpp"

using namespace rlab;

namespace {

const ComplexMatrix kSigmaZ{{1, 0}, {0, -1}};

// Map X -> sum_k K_k X K_k^dagger evaluated with the naive oracle.
oracle::Mat kraus_oracle(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& x) {
  oracle::Mat out = oracle::zeros(x.dim());
  for (const ComplexMatrix& k : kraus) {
    const oracle::Mat kk = oracle::from(k);
    out = oracle::add(out, oracle::mul(oracle::mul(kk, oracle::from(x)), oracle::dagger(kk)));
  }
  return out;
}

Superoperator random_cp_map(std::size_t d, std::size_t terms, Rng& rng) {
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < terms; ++k) kraus.push_back(random_matrix(d, rng));
  return Superoperator::from_kraus(kraus);
}

Superoperator random_map(std::size_t d, Rng& rng) { return Superoperator(d, random_matrix(d * d, rng)); }

}  // namespace

TEST_CASE("vectorization is column stacking") {
  const ComplexMatrix x{{1, 2}, {3, 4}};
  CHECK(vectorize(x) == ComplexVector{1, 3, 2, 4});
  CHECK(devectorize(vectorize(x), 2) == x);
  Rng rng(1);
  // vec(AXB) = (B^T (x) A) vec(X)
  const ComplexMatrix a = random_matrix(3, rng), b = random_matrix(3, rng), m = random_matrix(3, rng);
  const ComplexVector lhs = vectorize(a * m * b);
  const ComplexVector rhs = tensor(b.transpose(), a) * vectorize(m);
  for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-12);
}

TEST_CASE("superoperator shape checks") {
  CHECK_THROWS_AS(Superoperator(2, ComplexMatrix(3)), InvalidArgument);
  CHECK_THROWS_AS(Superoperator::identity(2)(ComplexMatrix(3)), InvalidArgument);
  CHECK_THROWS_AS(Superoperator::identity(2).compose(Superoperator::identity(3)), InvalidArgument);
  CHECK_THROWS_AS(Superoperator::identity(2) + Superoperator::identity(3), InvalidArgument);
  CHECK_THROWS_AS(trace_of_map(Superoperator::identity(2), ComplexMatrix(3)), InvalidArgument);
}

TEST_CASE("apply examples") {
  Rng rng(2);
  const ComplexMatrix m = random_matrix(3, rng);
  CHECK(apply(Superoperator::identity(3), m) == m);
  const ComplexMatrix u = random_unitary(3, rng);
  CHECK(max_abs_diff(apply(Superoperator::conjugation(u), ComplexMatrix::identity(3)), ComplexMatrix::identity(3)) <=
        1e-12);
  CHECK(apply(Superoperator::zero(3), m) == ComplexMatrix(3));

  const ComplexMatrix l = random_matrix(3, rng), r = random_matrix(3, rng);
  const oracle::Mat expected = oracle::mul(oracle::mul(oracle::from(l), oracle::from(m)), oracle::from(r));
  CHECK(oracle::max_diff(apply(Superoperator::sandwich(l, r), m), expected) <= 1e-12);
}

TEST_CASE("apply is linear over the four-part decomposition") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial) % 3;
    const Superoperator s = random_map(d, rng);
    const ComplexMatrix m = random_matrix(d, rng);
    const TraceClassDecomposition dec = decompose_trace_class(m);
    ComplexMatrix combined(d);
    for (std::size_t k = 0; k < 4; ++k)
      combined.add_scaled(TraceClassDecomposition::kPhases[k] * dec.lambdas[k], apply(s, dec.parts[k].matrix()));
    CHECK(max_abs_diff(apply(s, m), combined) <= 1e-10);

    const ComplexMatrix y = random_matrix(d, rng);
    const cplx alpha = rng.complex_normal(), beta = rng.complex_normal();
    CHECK(max_abs_diff(apply(s, alpha * m + beta * y), alpha * apply(s, m) + beta * apply(s, y)) <= 1e-12);
  }
}

TEST_CASE("from_function and from_kraus agree with direct evaluation") {
  Rng rng(4);
  const std::vector<ComplexMatrix> kraus{random_matrix(3, rng), random_matrix(3, rng)};
  const Superoperator s = Superoperator::from_kraus(kraus);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix x = random_matrix(3, rng);
    CHECK(oracle::max_diff(s(x), kraus_oracle(kraus, x)) <= 1e-12);
  }
  const Superoperator f = Superoperator::from_function(3, [&](const ComplexMatrix& x) {
    return kraus[0] * x * kraus[0].adjoint() + kraus[1] * x * kraus[1].adjoint();
  });
  CHECK(maps_equal(s, f, 1e-12));
}

TEST_CASE("compose applies the right operand first") {
  Rng rng(5);
  const Superoperator a = random_map(2, rng), b = random_map(2, rng);
  const ComplexMatrix x = random_matrix(2, rng);
  CHECK(max_abs_diff(a.compose(b)(x), a(b(x))) <= 1e-12);
}

TEST_CASE("decompose_trace_class examples") {
  Rng rng(6);
  const ComplexMatrix rho = random_density_matrix(3, rng);
  const TraceClassDecomposition pos = decompose_trace_class(rho);
  CHECK(pos.lambdas[0] == doctest::Approx(1.0));
  CHECK(pos.lambdas[1] == 0.0);
  CHECK(pos.lambdas[2] == 0.0);
  CHECK(pos.lambdas[3] == 0.0);
  CHECK(max_abs_diff(pos.parts[0].matrix(), rho) <= 1e-12);
  CHECK(pos.parts[1] == DensityOperator::maximally_mixed(3));

  const TraceClassDecomposition neg = decompose_trace_class(-1.0 * rho);
  CHECK(neg.lambdas[0] == 0.0);
  CHECK(neg.lambdas[1] == doctest::Approx(1.0));
  CHECK(max_abs_diff(neg.parts[1].matrix(), rho) <= 1e-12);

  const ComplexMatrix ket01 = ComplexMatrix::unit(2, 0, 1);
  const TraceClassDecomposition off = decompose_trace_class(ket01);
  // oracle recombination
  oracle::Mat re = oracle::zeros(2);
  for (std::size_t k = 0; k < 4; ++k)
    re = oracle::add(re, oracle::scaled(oracle::from(off.parts[k].matrix()),
                                        TraceClassDecomposition::kPhases[k] * off.lambdas[k]));
  CHECK(oracle::max_diff(ket01, re) <= 1e-12);
  // |0><1| = (sigma_x + i sigma_y)/2 with each half split into +-1/4 parts
  for (double lambda : off.lambdas) CHECK(lambda == doctest::Approx(0.5));
}

TEST_CASE("decompose_trace_class reassembles random matrices") {
  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial) % 7;
    const ComplexMatrix m = random_matrix(d, rng);
    const TraceClassDecomposition dec = decompose_trace_class(m);
    CHECK(max_abs_diff(dec.reassemble(), m) <= 1e-10);
    for (double lambda : dec.lambdas) CHECK(lambda >= 0.0);
  }
}

TEST_CASE("dual examples and defining identity") {
  CHECK(maps_equal(dual(Superoperator::identity(3)), Superoperator::identity(3), 0.0));
  Rng rng(8);
  const ComplexMatrix u = random_unitary(3, rng);
  CHECK(maps_equal(dual(Superoperator::conjugation(u)), Superoperator::conjugation(u.adjoint()), 1e-12));

  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial) % 4;
    const Superoperator s = random_map(d, rng);
    const ComplexMatrix x = random_matrix(d, rng), rho = random_matrix(d, rng);
    const cplx lhs = trace_of_product(x, apply(s, rho));
    const cplx rhs = trace_of_product(apply(dual(s), x), rho);
    CHECK(std::abs(lhs - rhs) <= 1e-10);
    CHECK(map_distance(dual(dual(s)), s) <= 1e-12);
  }
}

TEST_CASE("dual is linear") {
  Rng rng(9);
  const Superoperator a = random_map(3, rng), b = random_map(3, rng);
  CHECK(map_distance(dual(a + b), dual(a) + dual(b)) == 0.0);
}

TEST_CASE("choi examples") {
  const ChoiMatrix id = choi(Superoperator::identity(2));
  const EigenDecomposition e = hermitian_eig(id.matrix);
  CHECK(id.matrix.trace().real() == doctest::Approx(2.0));
  CHECK(e.values[3] == doctest::Approx(2.0));
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(e.values[i]) <= 1e-12);

  const std::size_t d = 3;
  const Superoperator depolarize = Superoperator::from_function(
      d, [&](const ComplexMatrix& x) { return (x.trace() / static_cast<double>(d)) * ComplexMatrix::identity(d); });
  CHECK(max_abs_diff(choi(depolarize).matrix, (1.0 / d) * ComplexMatrix::identity(d * d)) <= 1e-15);

  // block (i, j) is the image of |i><j|
  Rng rng(10);
  const Superoperator s = random_map(2, rng);
  const ChoiMatrix c = choi(s);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const ComplexMatrix image = s(ComplexMatrix::unit(2, i, j));
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) CHECK(c.matrix(i * 2 + k, j * 2 + l) == image(k, l));
    }
}

TEST_CASE("choi rank equals the number of independent Kraus operators") {
  Rng rng(11);
  for (std::size_t terms = 1; terms <= 4; ++terms) {
    const Superoperator s = random_cp_map(3, terms, rng);
    const EigenDecomposition e = hermitian_eig(choi(s).matrix);
    std::size_t rank = 0;
    for (double v : e.values) {
      CHECK(v >= -1e-10);
      if (v > 1e-10) ++rank;
    }
    CHECK(rank == terms);
  }
}

TEST_CASE("choi is a bijection") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Superoperator s = random_map(1 + static_cast<std::size_t>(trial) % 4, rng);
    CHECK(map_distance(from_choi(choi(s)), s) <= 1e-12);
  }
}

TEST_CASE("kraus_from_choi examples") {
  const std::vector<ComplexMatrix> id = kraus_from_choi(choi(Superoperator::identity(3)));
  REQUIRE(id.size() == 1);
  // proportional to I up to a global phase
  const cplx phase = id[0](0, 0);
  CHECK(std::abs(phase) == doctest::Approx(1.0));
  CHECK(max_abs_diff(id[0], phase * ComplexMatrix::identity(3)) <= 1e-12);

  const ComplexMatrix p = ComplexMatrix::diagonal({1, 0, 1});
  const std::vector<ComplexMatrix> proj = kraus_from_choi(choi(Superoperator::sandwich(p, p)));
  REQUIRE(proj.size() == 1);
  const cplx ph = proj[0](0, 0);
  CHECK(max_abs_diff(proj[0], ph * p) <= 1e-12);

  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial) % 3;
    const Superoperator s = random_cp_map(d, 1 + static_cast<std::size_t>(trial) % 3, rng);
    const std::vector<ComplexMatrix> kraus = kraus_from_choi(choi(s));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const ComplexMatrix unit = ComplexMatrix::unit(d, i, j);
        CHECK(oracle::max_diff(s(unit), kraus_oracle(kraus, unit)) <= 1e-9);
      }
  }

  // transpose map is positive but not completely positive
  const Superoperator transpose = Superoperator::from_function(2, [](const ComplexMatrix& x) { return x.transpose(); });
  CHECK_THROWS_AS(kraus_from_choi(choi(transpose)), NotCompletelyPositive);
  try {
    kraus_from_choi(choi(transpose));
  } catch (const NotCompletelyPositive& e) {
    CHECK(e.min_eigenvalue() == doctest::Approx(-1.0));
  }
}

TEST_CASE("positivity checks") {
  CHECK(is_positive_sampled(Superoperator::identity(3), 5, 1));
  const Superoperator transpose = Superoperator::from_function(2, [](const ComplexMatrix& x) { return x.transpose(); });
  CHECK(is_positive_sampled(transpose, 200, 2));
  CHECK_FALSE(is_completely_positive(transpose));
  const Superoperator left_z = Superoperator::sandwich(kSigmaZ, ComplexMatrix::identity(2));
  CHECK_FALSE(is_positive_sampled(left_z, 200, 3));
  CHECK_THROWS_AS(is_positive_sampled(left_z, 0, 3), InvalidArgument);
  Rng rng(14);
  CHECK(is_completely_positive(random_cp_map(3, 2, rng)));
}

TEST_CASE("trace_of_map examples") {
  Rng rng(15);
  const ComplexMatrix rho = random_density_matrix(3, rng);
  const ComplexMatrix u = random_unitary(3, rng);
  CHECK(std::abs(trace_of_map(Superoperator::conjugation(u), rho) - 1.0) <= 1e-12);
  CHECK(trace_of_map(Superoperator::zero(3), rho) == cplx{0, 0});
}
