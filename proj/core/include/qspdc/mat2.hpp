#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include "qspdc/scalar.hpp"

namespace qspdc {

/// Dense 2x2 matrix, row-major.
template <class S>
struct Mat2 {
  std::array<S, 4> a{};

  static Mat2 zero() { return Mat2{{S(0), S(0), S(0), S(0)}}; }
  static Mat2 identity() { return Mat2{{S(1), S(0), S(0), S(1)}}; }
  static Mat2 diag(const S& x, const S& y) { return Mat2{{x, S(0), S(0), y}}; }

  S& operator()(int r, int c) { return a[2 * r + c]; }
  const S& operator()(int r, int c) const { return a[2 * r + c]; }

  Mat2& operator+=(const Mat2& o) {
    for (int i = 0; i < 4; ++i) a[i] += o.a[i];
    return *this;
  }
  Mat2& operator-=(const Mat2& o) {
    for (int i = 0; i < 4; ++i) a[i] -= o.a[i];
    return *this;
  }
  Mat2& operator*=(const S& s) {
    for (auto& x : a) x *= s;
    return *this;
  }

  friend Mat2 operator+(Mat2 x, const Mat2& y) { return x += y; }
  friend Mat2 operator-(Mat2 x, const Mat2& y) { return x -= y; }
  friend Mat2 operator-(const Mat2& x) { return Mat2{{-x.a[0], -x.a[1], -x.a[2], -x.a[3]}}; }
  friend Mat2 operator*(Mat2 x, const S& s) { return x *= s; }
  friend Mat2 operator*(const S& s, Mat2 x) { return x *= s; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return Mat2{{x.a[0] * y.a[0] + x.a[1] * y.a[2], x.a[0] * y.a[1] + x.a[1] * y.a[3],
                 x.a[2] * y.a[0] + x.a[3] * y.a[2], x.a[2] * y.a[1] + x.a[3] * y.a[3]}};
  }
  friend bool operator==(const Mat2& x, const Mat2& y) { return x.a == y.a; }
};

using Mat2c = Mat2<Complex>;
using Mat2q = Mat2<GaussRational>;

template <class S>
Mat2<S> adjoint(const Mat2<S>& m) {
  using B = Backend<S>;
  return Mat2<S>{{B::conj(m.a[0]), B::conj(m.a[2]), B::conj(m.a[1]), B::conj(m.a[3])}};
}

/// Entry-wise complex conjugate (no transpose).
template <class S>
Mat2<S> conj_entries(const Mat2<S>& m) {
  using B = Backend<S>;
  return Mat2<S>{{B::conj(m.a[0]), B::conj(m.a[1]), B::conj(m.a[2]), B::conj(m.a[3])}};
}

template <class S>
S trace(const Mat2<S>& m) {
  return m.a[0] + m.a[3];
}

template <class S>
S det(const Mat2<S>& m) {
  return m.a[0] * m.a[3] - m.a[1] * m.a[2];
}

/// Squared Frobenius norm as a double (exact entries are rounded).
template <class S>
double frobenius2(const Mat2<S>& m) {
  double s = 0;
  for (const auto& x : m.a) s += Backend<S>::magnitude2(x);
  return s;
}

template <class S>
double frobenius(const Mat2<S>& m) {
  return std::sqrt(frobenius2(m));
}

template <class S>
Mat2c to_float(const Mat2<S>& m) {
  using B = Backend<S>;
  return Mat2c{{B::to_float(m.a[0]), B::to_float(m.a[1]), B::to_float(m.a[2]), B::to_float(m.a[3])}};
}

template <class S>
bool is_zero(const Mat2<S>& m) {
  if constexpr (Backend<S>::exact) {
    for (const auto& x : m.a)
      if (!x.is_zero()) return false;
    return true;
  } else {
    return frobenius(m) <= kTruncTol;
  }
}

/// max(||U^dagger U - I||_F, |det U - 1|); zero exactly on SU(2).
inline double su2_residual(const Mat2c& u) {
  return std::max(frobenius(adjoint(u) * u - Mat2c::identity()), std::abs(det(u) - 1.0));
}

/// Rank-one orthogonal projector onto the top eigenvector of a Hermitian matrix.
Mat2c top_eigenprojector(const Mat2c& hermitian);

/// Special-unitary matrix whose first column is the unit vector `v`.
Mat2c su2_with_first_column(Complex v0, Complex v1);

/// Projection onto SU(2) through the quaternion part [[x, -conj(y)], [y, conj(x)]].
Mat2c nearest_su2(const Mat2c& m);

inline const Mat2c kPauliX{{0.0, 1.0, 1.0, 0.0}};

template <class S>
std::ostream& operator<<(std::ostream& os, const Mat2<S>& m) {
  const Mat2c f = to_float(m);
  return os << "[[" << f.a[0] << ", " << f.a[1] << "], [" << f.a[2] << ", " << f.a[3] << "]]";
}

}  // namespace qspdc
