#include "qspdc/mat2.hpp"

namespace qspdc {

Mat2c top_eigenprojector(const Mat2c& h) {
  // Hermitian [[p, q], [conj(q), r]] with real p, r.
  const double p = h.a[0].real();
  const double r = h.a[3].real();
  const Complex q = 0.5 * (h.a[1] + std::conj(h.a[2]));
  const double half_gap = std::hypot(0.5 * (p - r), std::abs(q));
  const double lambda = 0.5 * (p + r) + half_gap;
  // Two candidate eigenvectors; pick the better conditioned one.
  Complex v0, v1;
  if (p - r >= 0) {
    v0 = lambda - r;
    v1 = std::conj(q);
  } else {
    v0 = q;
    v1 = lambda - p;
  }
  const double n = std::sqrt(std::norm(v0) + std::norm(v1));
  if (n == 0.0) return Mat2c::diag(1.0, 0.0);
  v0 /= n;
  v1 /= n;
  return Mat2c{{v0 * std::conj(v0), v0 * std::conj(v1), v1 * std::conj(v0), v1 * std::conj(v1)}};
}

Mat2c su2_with_first_column(Complex v0, Complex v1) {
  const double n = std::sqrt(std::norm(v0) + std::norm(v1));
  v0 /= n;
  v1 /= n;
  return Mat2c{{v0, -std::conj(v1), v1, std::conj(v0)}};
}

Mat2c nearest_su2(const Mat2c& m) {
  return su2_with_first_column(0.5 * (m.a[0] + std::conj(m.a[3])), 0.5 * (m.a[2] - std::conj(m.a[1])));
}

}  // namespace qspdc
