#pragma once

// Inhomogeneous bivariate QSP: products whose signal slots each carry either
// a or b, necessary conditions for such a product decomposition, the corner
// obstruction, and the constructive decomposition when one variable has
// degree at most one.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qspdc/laurent.hpp"
#include "qspdc/qsp_uni.hpp"

namespace qspdc {

/// U_0 diag(c_1, 1/c_1) U_1 ... diag(c_d, 1/c_d) U_d with c_i = a or b per
/// `seq.word`. Variable 0 is a, variable 1 is b.
MatLaurent2c build_alt_product(const UnitarySeq& seq);

/// Direct chain evaluation at one torus pair.
Mat2c evaluate_alt_chain(const UnitarySeq& seq, Complex a, Complex b);

struct BinecReport {
  int da = 0;
  int db = 0;
  int deg_a = 0;
  int deg_b = 0;
  bool degree_ok = false;   // deg_a F <= d_a, deg_b F <= d_b
  bool unitary_ok = false;  // F(a,b) in SU(2) on the torus
  bool parity_ok = false;   // F(-a,b) = (-1)^d_a F, F(a,-b) = (-1)^d_b F
  double unitarity_residual = 0;
  double det_residual = 0;
  int samples = 0;

  bool pass() const { return degree_ok && unitary_ok && parity_ok; }
  std::string first_failure() const;
};

/// SU(2)-valuedness is sampled on a (2 max(d_a,d_b) + 5)^2 grid plus 16
/// pseudo-random torus pairs; parity is checked on exponents.
BinecReport check_binec(const MatLaurent2c& f, int da, int db, double tol = 1e-9);

enum class Verdict { Decomposable, NotDecomposable, NotDecomposableBySearch, Inconclusive };

std::string to_string(Verdict v);

/// Corner coefficients M_{j,k} of a^j b^k at j = +-deg_a, k = +-deg_b and the
/// two products M_{da,db} M_{da,-db}^dagger and M_{da,-db} M_{-da,-db}^dagger.
template <BackendScalar S>
struct CornerProducts {
  int deg_a = 0;
  int deg_b = 0;
  Mat2<S> upper = Mat2<S>::zero();  // M_{da,db} M_{da,-db}^dagger
  Mat2<S> lower = Mat2<S>::zero();  // M_{da,-db} M_{-da,-db}^dagger
  bool upper_nonzero = false;
  bool lower_nonzero = false;
};

template <BackendScalar S>
CornerProducts<S> corner_products(const MatLaurent2<S>& f) {
  CornerProducts<S> r;
  r.deg_a = f.degree(0);
  r.deg_b = f.degree(1);
  const int da = r.deg_a, db = r.deg_b;
  const Mat2<S> mpp = f.coeff({da, db});
  const Mat2<S> mpm = f.coeff({da, -db});
  const Mat2<S> mmm = f.coeff({-da, -db});
  r.upper = mpp * adjoint(mpm);
  r.lower = mpm * adjoint(mmm);
  r.upper_nonzero = !is_zero(r.upper);
  r.lower_nonzero = !is_zero(r.lower);
  return r;
}

struct DecompositionCertificate {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<UnitarySeq> witness;
  /// Both corner products when they certify non-decomposability.
  std::optional<std::array<Mat2c, 2>> obstruction;
  /// Exact corner products, when certified in the exact backend.
  std::optional<std::array<Mat2q, 2>> exact_obstruction;
  double witness_residual = 0;
  std::string note;
};

/// Corner obstruction: a decomposable F has at least one vanishing
/// corner product. Both nonzero gives not-decomposable; otherwise the test
/// says nothing and the verdict is inconclusive.
DecompositionCertificate corner_test(const MatLaurent2c& f);
DecompositionCertificate corner_test(const MatLaurent2q& f);

struct EvenProjection {
  MatLaurent1c u;                 // U(b) = E_{S_1}(1/b) ... E_{S_k}(1/b)
  std::array<Complex, 2> psi{};   // Pi(b) = U(b) |psi><psi| U(b)^dagger
  std::vector<Mat2c> projs;       // S_1 .. S_k
};

/// Pi(b) even, self-adjoint, Pi^2 = Pi, degree 2k: repeatedly conjugates by
/// E_S(b) with S the projector onto the row space of the leading coefficient,
/// which lowers the degree by two. Throws DecompositionError otherwise.
EvenProjection decompose_even_projection(const MatLaurent1c& pi, double tol = 1e-9);

/// Swaps the roles of a and b.
MatLaurent2c swap_variables(const MatLaurent2c& f);

/// Product decomposition of F with deg_a F <= 1 (or deg_b F <= 1, by swapping):
/// F(a,b) = E_0(b) E_{Pi(b)}(a) with E_0(b) = F(1,b), Pi(b) = F(1,b)^dagger M_1(b),
/// then Pi = U K U^dagger. The gates carry the word b^m a b^n; the b-count is
/// not minimal in general.
UnitarySeq decompose_dega1(const MatLaurent2c& f, const HaahOptions& opts = {});

/// One-variable slice: the coefficient of a^j as a polynomial in b.
MatLaurent1c a_slice(const MatLaurent2c& f, int j);

}  // namespace qspdc
