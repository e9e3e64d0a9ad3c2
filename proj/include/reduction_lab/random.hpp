#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "reduction_lab/matrix.hpp"

namespace rlab {

/// Seeded source for every randomized construction and sampled check.
/// Same seed, same platform: bit-identical draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  /// Standard complex Gaussian (real and imaginary parts each N(0, 1/2)).
  cplx complex_normal();
  /// Derives an independent seed for a sub-task, e.g. one per trial.
  std::uint64_t fork() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

ComplexVector random_vector(std::size_t dim, Rng& rng);
ComplexVector random_unit_vector(std::size_t dim, Rng& rng);
/// Ginibre matrix: i.i.d. standard complex Gaussian entries.
ComplexMatrix random_matrix(std::size_t dim, Rng& rng);
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);
/// Haar-distributed unitary (Gram-Schmidt on a Ginibre matrix).
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);
/// Density matrix G G^dagger / Tr with G a dim x rank Ginibre block.
ComplexMatrix random_density_matrix(std::size_t dim, Rng& rng, std::size_t rank = 0);

/// Extends an orthonormal family to an orthonormal basis of C^dim.
/// Candidates are the standard basis vectors; at each step the one with the
/// largest residual after projection is taken (ties go to the lowest index),
/// so the completion is deterministic.
std::vector<ComplexVector> orthonormal_completion(std::span<const ComplexVector> family, std::size_t dim);

/// Orthonormalizes `vectors` in order (modified Gram-Schmidt, two passes).
/// Throws InvalidArgument if they are linearly dependent.
std::vector<ComplexVector> gram_schmidt(std::vector<ComplexVector> vectors);

}  // namespace rlab
