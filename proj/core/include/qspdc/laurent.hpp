#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <variant>

#include "qspdc/error.hpp"
#include "qspdc/mat2.hpp"
#include "qspdc/scalar.hpp"

namespace qspdc {

template <std::size_t V>
using Exponent = std::array<int, V>;

enum class Parity { Even, Odd, Mixed };

std::string to_string(Parity p);

namespace detail {

template <class C>
struct CoeffOps;

template <BackendScalar S>
struct CoeffOps<S> {
  using Scalar = S;
  static S zero() { return S(0); }
  static bool negligible(const S& c) { return Backend<S>::is_zero(c); }
  static S adjoint(const S& c) { return Backend<S>::conj(c); }
  static double norm(const S& c) { return std::sqrt(Backend<S>::magnitude2(c)); }
  static Complex to_float(const S& c) { return Backend<S>::to_float(c); }
};

template <BackendScalar S>
struct CoeffOps<Mat2<S>> {
  using Scalar = S;
  static Mat2<S> zero() { return Mat2<S>::zero(); }
  static bool negligible(const Mat2<S>& c) { return is_zero(c); }
  static Mat2<S> adjoint(const Mat2<S>& c) { return qspdc::adjoint(c); }
  static double norm(const Mat2<S>& c) { return frobenius(c); }
  static Mat2c to_float(const Mat2<S>& c) { return qspdc::to_float(c); }
};

}  // namespace detail

/// Sparse Laurent polynomial in V commuting variables with coefficients C
/// (a scalar or a 2x2 matrix over Complex or GaussRational).
///
/// Stored coefficients are never negligible: exact zeros are dropped in the
/// exact backend, coefficients with Frobenius norm <= kTruncTol are dropped in
/// the float backend. The per-variable parity class is recomputed whenever the
/// term set changes.
template <std::size_t V, class C>
class Laurent {
 public:
  using Coeff = C;
  using Ops = detail::CoeffOps<C>;
  using Scalar = typename Ops::Scalar;
  using Key = Exponent<V>;
  using Terms = std::map<Key, C>;
  static constexpr std::size_t kVars = V;

  Laurent() { parity_.fill(Parity::Even); }
  explicit Laurent(Terms terms) : terms_(std::move(terms)) { normalize(); }

  static Laurent constant(const C& c) { return monomial(Key{}, c); }
  static Laurent monomial(const Key& e, const C& c) {
    Laurent p;
    p.add_term(e, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  C coeff(const Key& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Ops::zero() : it->second;
  }

  /// Adds `c` to the coefficient of x^e, dropping it when the sum is negligible.
  void add_term(const Key& e, const C& c) {
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) it->second += c;
    if (Ops::negligible(it->second)) terms_.erase(it);
    refresh_parity();
  }

  /// Max |exponent| of variable `var`; 0 for the zero polynomial.
  int degree(std::size_t var = 0) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, std::abs(e[var]));
    return d;
  }

  Parity parity(std::size_t var = 0) const { return parity_[var]; }

  friend bool operator==(const Laurent& x, const Laurent& y) { return x.terms_ == y.terms_; }

 private:
  void normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (Ops::negligible(it->second))
        it = terms_.erase(it);
      else
        ++it;
    }
    refresh_parity();
  }

  void refresh_parity() {
    for (std::size_t v = 0; v < V; ++v) {
      bool even = false, odd = false;
      for (const auto& [e, c] : terms_) (e[v] % 2 == 0 ? even : odd) = true;
      parity_[v] = (even && odd) ? Parity::Mixed : (odd ? Parity::Odd : Parity::Even);
    }
  }

  Terms terms_;
  std::array<Parity, V> parity_{};
};

template <BackendScalar S>
using MatLaurent1 = Laurent<1, Mat2<S>>;
template <BackendScalar S>
using MatLaurent2 = Laurent<2, Mat2<S>>;
template <BackendScalar S>
using ScalarLaurent1 = Laurent<1, S>;
template <BackendScalar S>
using ScalarLaurent2 = Laurent<2, S>;

using MatLaurent1c = MatLaurent1<Complex>;
using MatLaurent2c = MatLaurent2<Complex>;
using MatLaurent1q = MatLaurent1<GaussRational>;
using MatLaurent2q = MatLaurent2<GaussRational>;
using ScalarLaurent1c = ScalarLaurent1<Complex>;
using ScalarLaurent2c = ScalarLaurent2<Complex>;
using ScalarLaurent2q = ScalarLaurent2<GaussRational>;

template <std::size_t V>
Exponent<V> operator+(const Exponent<V>& x, const Exponent<V>& y) {
  Exponent<V> r;
  for (std::size_t i = 0; i < V; ++i) r[i] = x[i] + y[i];
  return r;
}

template <std::size_t V>
Exponent<V> operator-(const Exponent<V>& x) {
  Exponent<V> r;
  for (std::size_t i = 0; i < V; ++i) r[i] = -x[i];
  return r;
}

template <std::size_t V, class C>
Laurent<V, C> operator+(const Laurent<V, C>& f, const Laurent<V, C>& g) {
  auto terms = f.terms();
  for (const auto& [e, c] : g.terms()) {
    auto [it, inserted] = terms.try_emplace(e, c);
    if (!inserted) it->second += c;
  }
  return Laurent<V, C>(std::move(terms));
}

template <std::size_t V, class C>
Laurent<V, C> operator-(const Laurent<V, C>& f) {
  typename Laurent<V, C>::Terms terms;
  for (const auto& [e, c] : f.terms()) terms.emplace(e, -c);
  return Laurent<V, C>(std::move(terms));
}

template <std::size_t V, class C>
Laurent<V, C> operator-(const Laurent<V, C>& f, const Laurent<V, C>& g) {
  return f + (-g);
}

/// Scales every coefficient by a scalar of the same backend.
template <std::size_t V, class C>
Laurent<V, C> scale(const Laurent<V, C>& f, const typename Laurent<V, C>::Scalar& s) {
  typename Laurent<V, C>::Terms terms;
  for (const auto& [e, c] : f.terms()) terms.emplace(e, c * s);
  return Laurent<V, C>(std::move(terms));
}

/// Coefficient-wise convolution. Coefficient products keep their order, so
/// matrix-valued polynomials multiply as matrices.
template <std::size_t V, class C>
Laurent<V, C> multiply(const Laurent<V, C>& f, const Laurent<V, C>& g) {
  typename Laurent<V, C>::Terms terms;
  for (const auto& [ef, cf] : f.terms()) {
    for (const auto& [eg, cg] : g.terms()) {
      const auto e = ef + eg;
      if (auto it = terms.find(e); it != terms.end())
        it->second += cf * cg;
      else
        terms.emplace(e, cf * cg);
    }
  }
  return Laurent<V, C>(std::move(terms));
}

template <std::size_t V, class C>
Laurent<V, C> operator*(const Laurent<V, C>& f, const Laurent<V, C>& g) {
  return multiply(f, g);
}

/// f^dagger: conjugate-transpose every coefficient and negate every exponent,
/// so that adjoint(f)(z) = f(z)^dagger on the torus.
template <std::size_t V, class C>
Laurent<V, C> adjoint(const Laurent<V, C>& f) {
  typename Laurent<V, C>::Terms terms;
  for (const auto& [e, c] : f.terms()) terms.emplace(-e, Laurent<V, C>::Ops::adjoint(c));
  return Laurent<V, C>(std::move(terms));
}

/// f(z^-1): negate every exponent, keep coefficients.
template <std::size_t V, class C>
Laurent<V, C> reflect(const Laurent<V, C>& f) {
  typename Laurent<V, C>::Terms terms;
  for (const auto& [e, c] : f.terms()) terms.emplace(-e, c);
  return Laurent<V, C>(std::move(terms));
}

/// f*: conjugate every scalar coefficient, keep exponents.
template <std::size_t V, BackendScalar S>
Laurent<V, S> conj_coeffs(const Laurent<V, S>& f) {
  typename Laurent<V, S>::Terms terms;
  for (const auto& [e, c] : f.terms()) terms.emplace(e, Backend<S>::conj(c));
  return Laurent<V, S>(std::move(terms));
}

/// f(-z) along one variable: flips the sign of odd-exponent terms.
template <std::size_t V, class C>
Laurent<V, C> negate_variable(const Laurent<V, C>& f, std::size_t var) {
  typename Laurent<V, C>::Terms terms;
  for (const auto& [e, c] : f.terms()) terms.emplace(e, (e[var] % 2 == 0) ? c : -c);
  return Laurent<V, C>(std::move(terms));
}

/// Rounds exact coefficients to double precision.
template <std::size_t V, class C>
auto to_float(const Laurent<V, C>& f) {
  using FC = decltype(Laurent<V, C>::Ops::to_float(std::declval<C>()));
  typename Laurent<V, FC>::Terms terms;
  for (const auto& [e, c] : f.terms()) terms.emplace(e, Laurent<V, C>::Ops::to_float(c));
  return Laurent<V, FC>(std::move(terms));
}

/// Max coefficient-wise norm of f - g (Frobenius for matrices), float backend.
template <std::size_t V, class C>
double max_coeff_distance(const Laurent<V, C>& f, const Laurent<V, C>& g) {
  using Ops = typename Laurent<V, C>::Ops;
  double m = 0;
  for (const auto& [e, c] : f.terms()) m = std::max(m, Ops::norm(c - g.coeff(e)));
  for (const auto& [e, c] : g.terms())
    if (!f.terms().contains(e)) m = std::max(m, Ops::norm(c));
  return m;
}

/// Largest coefficient norm.
template <std::size_t V, class C>
double max_coeff_norm(const Laurent<V, C>& f) {
  double m = 0;
  for (const auto& [e, c] : f.terms()) m = std::max(m, Laurent<V, C>::Ops::norm(c));
  return m;
}

/// Unit-modulus power z^e computed from the argument to avoid drift.
inline Complex unit_power(Complex z, int e) {
  if (e == 0) return 1.0;
  return std::polar(1.0, e * std::arg(z));
}

inline constexpr double kUnitModulusTol = 1e-12;

/// Evaluates at a point of the unit torus (float arithmetic).
template <std::size_t V, class C>
auto evaluate(const Laurent<V, C>& f, const std::array<Complex, V>& point) {
  using Ops = typename Laurent<V, C>::Ops;
  using FC = decltype(Ops::to_float(std::declval<C>()));
  for (std::size_t v = 0; v < V; ++v) {
    if (std::abs(std::abs(point[v]) - 1.0) > kUnitModulusTol)
      throw DomainError("evaluation point coordinate " + std::to_string(v) + " is not on the unit circle");
  }
  FC acc = detail::CoeffOps<FC>::zero();
  for (const auto& [e, c] : f.terms()) {
    Complex mono = 1.0;
    for (std::size_t v = 0; v < V; ++v) mono *= unit_power(point[v], e[v]);
    acc += Ops::to_float(c) * mono;
  }
  return acc;
}

/// Exact evaluation at a Gaussian-rational point with |z| = 1 exactly
/// (e.g. 1, i, -1, -i, (3+4i)/5).
template <std::size_t V, class C>
C evaluate_exact(const Laurent<V, C>& f, const std::array<GaussRational, V>& point) {
  using Ops = typename Laurent<V, C>::Ops;
  for (std::size_t v = 0; v < V; ++v) {
    if (point[v].norm() != 1)
      throw DomainError("exact evaluation point coordinate " + std::to_string(v) + " is not on the unit circle");
  }
  C acc = Ops::zero();
  for (const auto& [e, c] : f.terms()) {
    GaussRational mono(1);
    for (std::size_t v = 0; v < V; ++v) {
      // z^-1 = conj(z) on the unit circle.
      const GaussRational base = e[v] >= 0 ? point[v] : conj(point[v]);
      for (int k = 0; k < std::abs(e[v]); ++k) mono *= base;
    }
    acc += c * mono;
  }
  return acc;
}

template <std::size_t V>
struct DegreeParity {
  std::array<int, V> degree{};
  std::array<Parity, V> parity{};
};

template <std::size_t V, class C>
DegreeParity<V> degree_parity(const Laurent<V, C>& f) {
  DegreeParity<V> r;
  for (std::size_t v = 0; v < V; ++v) {
    r.degree[v] = f.degree(v);
    r.parity[v] = f.parity(v);
  }
  return r;
}

/// True when every exponent of `var` has the parity of `d`.
template <std::size_t V, class C>
bool has_parity_of(const Laurent<V, C>& f, std::size_t var, int d) {
  const Parity p = f.parity(var);
  if (f.is_zero()) return true;
  return p == ((d % 2 == 0) ? Parity::Even : Parity::Odd);
}

/// The constant identity polynomial.
template <std::size_t V, BackendScalar S>
Laurent<V, Mat2<S>> identity_polynomial() {
  return Laurent<V, Mat2<S>>::constant(Mat2<S>::identity());
}

/// Scalar polynomial of one matrix entry.
template <std::size_t V, BackendScalar S>
Laurent<V, S> entry(const Laurent<V, Mat2<S>>& f, int row, int col) {
  typename Laurent<V, S>::Terms terms;
  for (const auto& [e, c] : f.terms()) terms.emplace(e, c(row, col));
  return Laurent<V, S>(std::move(terms));
}

/// Matrix polynomial [[f00, f01], [f10, f11]].
template <std::size_t V, BackendScalar S>
Laurent<V, Mat2<S>> assemble(const Laurent<V, S>& f00, const Laurent<V, S>& f01, const Laurent<V, S>& f10,
                             const Laurent<V, S>& f11) {
  typename Laurent<V, Mat2<S>>::Terms terms;
  const Laurent<V, S>* parts[4] = {&f00, &f01, &f10, &f11};
  for (int k = 0; k < 4; ++k) {
    for (const auto& [e, c] : parts[k]->terms()) {
      auto [it, inserted] = terms.try_emplace(e, Mat2<S>::zero());
      it->second.a[k] = c;
    }
  }
  return Laurent<V, Mat2<S>>(std::move(terms));
}

/// Constant-matrix polynomial times f, f times constant.
template <std::size_t V, BackendScalar S>
Laurent<V, Mat2<S>> left_multiply(const Mat2<S>& m, const Laurent<V, Mat2<S>>& f) {
  typename Laurent<V, Mat2<S>>::Terms terms;
  for (const auto& [e, c] : f.terms()) terms.emplace(e, m * c);
  return Laurent<V, Mat2<S>>(std::move(terms));
}

template <std::size_t V, BackendScalar S>
Laurent<V, Mat2<S>> right_multiply(const Laurent<V, Mat2<S>>& f, const Mat2<S>& m) {
  typename Laurent<V, Mat2<S>>::Terms terms;
  for (const auto& [e, c] : f.terms()) terms.emplace(e, c * m);
  return Laurent<V, Mat2<S>>(std::move(terms));
}

/// f * diag(z, 1/z) with z the variable `var`: column 0 shifts up, column 1 down.
template <std::size_t V, BackendScalar S>
Laurent<V, Mat2<S>> right_multiply_signal(const Laurent<V, Mat2<S>>& f, std::size_t var) {
  typename Laurent<V, Mat2<S>>::Terms terms;
  auto add = [&](Exponent<V> e, const Mat2<S>& m) {
    auto [it, inserted] = terms.try_emplace(e, m);
    if (!inserted) it->second += m;
  };
  for (const auto& [e, c] : f.terms()) {
    Exponent<V> up = e, down = e;
    ++up[var];
    --down[var];
    add(up, Mat2<S>{{c.a[0], S(0), c.a[2], S(0)}});
    add(down, Mat2<S>{{S(0), c.a[1], S(0), c.a[3]}});
  }
  return Laurent<V, Mat2<S>>(std::move(terms));
}

/// Runtime-tagged polynomial as read from a document: variable count and
/// backend are only known at run time.
using AnyMatLaurent = std::variant<MatLaurent1c, MatLaurent1q, MatLaurent2c, MatLaurent2q>;

/// Multiplies two runtime-tagged polynomials; throws BackendMismatch when the
/// variable count or the backend differ.
AnyMatLaurent multiply(const AnyMatLaurent& f, const AnyMatLaurent& g);

int variable_count(const AnyMatLaurent& f);
bool is_exact(const AnyMatLaurent& f);

}  // namespace qspdc
