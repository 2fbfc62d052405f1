#include "qspdc/random.hpp"

#include <algorithm>
#include <numbers>

namespace qspdc {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Mat2c random_su2(Rng& rng) {
  std::normal_distribution<double> n01;
  double q[4];
  double norm = 0;
  do {
    norm = 0;
    for (double& x : q) {
      x = n01(rng);
      norm += x * x;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  const Complex a(q[0] / norm, q[3] / norm);
  const Complex b(q[2] / norm, q[1] / norm);
  return Mat2c{{a, b, -std::conj(b), std::conj(a)}};
}

Eigen::MatrixXcd random_gaussian_matrix(Rng& rng, int n) {
  std::normal_distribution<double> n01;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(n01(rng), n01(rng)) / std::numbers::sqrt2;
  return m;
}

Eigen::MatrixXcd random_unitary(Rng& rng, int n) {
  const Eigen::MatrixXcd z = random_gaussian_matrix(rng, n);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double m = std::abs(d);
    if (m > 0) q.col(j) *= d / m;
  }
  return q;
}

Eigen::MatrixXcd random_sun(Rng& rng, int n) {
  Eigen::MatrixXcd u = random_unitary(rng, n);
  const Complex d = u.determinant();
  u.col(0) /= d;
  return u;
}

Complex random_phase(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, angle(rng));
}

std::string random_word(Rng& rng, int na, int nb) {
  std::string w(static_cast<std::size_t>(na), 'a');
  w.append(static_cast<std::size_t>(nb), 'b');
  std::shuffle(w.begin(), w.end(), rng);
  return w;
}

Mat2c random_projector(Rng& rng) {
  const Mat2c u = random_su2(rng);
  return u * Mat2c::diag(1.0, 0.0) * adjoint(u);
}

}  // namespace qspdc
