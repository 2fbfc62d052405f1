#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qspdc {

using Complex = std::complex<double>;

/// Truncation tolerance (Frobenius norm) for float-backend normalization.
inline constexpr double kTruncTol = 1e-10;

/// Complex number with arbitrary-precision rational real and imaginary parts.
struct GaussRational {
  mpq_class re{0};
  mpq_class im{0};

  GaussRational() = default;
  GaussRational(mpq_class r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
  GaussRational(long r) : re(r) {}  // NOLINT(google-explicit-constructor)

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  mpq_class norm() const { return re * re + im * im; }

  GaussRational& operator+=(const GaussRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    mpq_class r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }
};

GaussRational conj(const GaussRational& z);
Complex to_complex(const GaussRational& z);

/// "p/q" text of a rational, with "/1" omitted for integers.
std::string rational_string(const mpq_class& q);
/// Parses "p/q", "p" or a finite decimal such as "0.25" into an exact rational.
mpq_class parse_rational(std::string_view text);
/// Human-readable "re + im i" form.
std::string to_string(const GaussRational& z);

/// Backend traits; the scalar type itself acts as the backend tag.
template <class S>
struct Backend;

template <>
struct Backend<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static Complex conj(const Complex& z) { return std::conj(z); }
  static double magnitude2(const Complex& z) { return std::norm(z); }
  static bool is_zero(const Complex& z) { return std::abs(z) <= kTruncTol; }
  static Complex to_float(const Complex& z) { return z; }
};

template <>
struct Backend<GaussRational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";
  static GaussRational conj(const GaussRational& z) { return qspdc::conj(z); }
  static double magnitude2(const GaussRational& z) { return z.norm().get_d(); }
  static bool is_zero(const GaussRational& z) { return z.is_zero(); }
  static Complex to_float(const GaussRational& z) { return to_complex(z); }
};

template <class S>
concept BackendScalar = requires { Backend<S>::exact; };

}  // namespace qspdc
