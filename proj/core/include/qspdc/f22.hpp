#pragma once

// The explicit (2,2) counterexample: a bivariate polynomial satisfying every
// necessary condition for a product decomposition but failing the corner test.

#include <string>
#include <vector>

#include "qspdc/laurent.hpp"

namespace qspdc {

/// s = num * sqrt(radicand) with rational num and radicand.
struct ScaleFactor {
  mpq_class num;
  mpq_class radicand;

  mpq_class squared() const { return num * num * radicand; }
  double value() const;
};

/// F = s * R with R Gaussian-rational.
struct ExactCounterexample {
  MatLaurent2q rescaled;
  ScalarLaurent2q p;  // rescaled P
  ScalarLaurent2q q;  // rescaled Q
  ScaleFactor scale;
};

/// Phases fixed to zero.
ExactCounterexample counterexample_f22();

/// Float polynomial s * R.
MatLaurent2c f22();

/// F = [[P, Q], [-Q*(1/a,1/b), P*(1/a,1/b)]] from scalar P and Q.
template <BackendScalar S>
MatLaurent2<S> su2_form(const ScalarLaurent2<S>& p, const ScalarLaurent2<S>& q) {
  return assemble(p, q, -adjoint(q), adjoint(p));
}

struct F22Report {
  bool symmetry_ok = false;     // P(1/a,1/b) = P, Q(1/a,1/b) = -Q
  bool unitarity_ok = false;    // P P* + Q Q* = 1/s^2 identically (P* = conj coefficients at 1/a,1/b)
  bool determinant_ok = false;  // det R = 1/s^2 identically
  bool magnitude_ok = false;    // |A|^2 = |F|^2 (a^2 b^2 coefficients of P and Q)
  bool corners_ok = false;      // corner products equal the expected values
  std::vector<std::string> failures;

  bool pass() const { return symmetry_ok && unitarity_ok && determinant_ok && magnitude_ok && corners_ok; }
};

/// Exact checks on arbitrary (possibly perturbed) data. Never throws.
F22Report check_f22_identities(const ExactCounterexample& ce);

/// Exact checks on the built-in counterexample; throws IdentityFailure listing
/// every failed identity.
F22Report verify_f22_identities();

/// Expected corner products of F (not of R): diagonals 72/10625 (1 +- i) and
/// 72/3625 (1 +- i).
std::array<Mat2q, 2> f22_expected_corner_diagonals();

}  // namespace qspdc
