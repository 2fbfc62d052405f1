#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qspdc/mat2.hpp"

namespace qspdc {

using Rng = std::mt19937_64;

/// Independent stream seed for work item `index` under `master` (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Haar-random element of SU(2).
Mat2c random_su2(Rng& rng);

/// Haar-random element of SU(n).
Eigen::MatrixXcd random_sun(Rng& rng, int n);

/// Haar-random element of U(n).
Eigen::MatrixXcd random_unitary(Rng& rng, int n);

/// Matrix with i.i.d. standard complex Gaussian entries.
Eigen::MatrixXcd random_gaussian_matrix(Rng& rng, int n);

/// Uniform point of the unit circle.
Complex random_phase(Rng& rng);

/// Uniformly random word with `na` a's and `nb` b's.
std::string random_word(Rng& rng, int na, int nb);

/// Random rank-one orthogonal projector.
Mat2c random_projector(Rng& rng);

}  // namespace qspdc
