#pragma once

// Homogeneous multivariate QSP: the commuting bivariate product with signal
// diag(a, b), and its non-commuting n-variable generalization whose
// coefficients are indexed by words over {1..n}.

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qspdc/laurent.hpp"
#include "qspdc/qsp_uni.hpp"
#include "qspdc/random.hpp"

namespace qspdc {

/// F(a,b) = sum_j coeffs[j] a^j b^(d-j), 0 <= j <= d.
struct HomBivariate {
  int d = 0;
  std::map<int, Mat2c> coeffs;

  Mat2c coeff(int j) const;
  Mat2c evaluate(Complex a, Complex b) const;
};

/// Embeds as a two-variable Laurent polynomial with keys (j, d - j).
MatLaurent2c to_laurent(const HomBivariate& f);
/// Inverse of to_laurent; throws ShapeError unless every key has total degree `d`.
HomBivariate hom_from_laurent(const MatLaurent2c& f, int d);
/// Total degree shared by all keys; throws ShapeError when they disagree.
int homogeneous_degree(const MatLaurent2c& f);

/// Max coefficient-wise Frobenius distance.
double max_coeff_distance(const HomBivariate& f, const HomBivariate& g);

struct HomReport {
  int d = 0;
  bool homogeneous_ok = false;  // (i)
  bool unitary_ok = false;      // (ii) F(a,b) in U(2) on the torus
  bool det_ok = false;          // (iii) det F = (ab)^d identically
  double unitarity_residual = 0;
  double det_residual = 0;
  int samples = 0;

  bool pass() const { return homogeneous_ok && unitary_ok && det_ok; }
  std::string first_failure() const;
};

/// Unitarity is sampled on a max(5, d+1)^2 equispaced grid plus 10 pseudo-random
/// pairs; the determinant identity is checked coefficient-wise.
HomReport check_hom_conditions(const HomBivariate& f, double tol = 1e-9);

/// U_0 diag(a,b) U_1 ... diag(a,b) U_d.
HomBivariate synthesize_homogeneous(const UnitarySeq& seq);

/// Direct chain evaluation at one pair.
Mat2c evaluate_hom_chain(const UnitarySeq& seq, Complex a, Complex b);

/// a^j b^(d-j) -> t^(2j-d): sends F to the univariate F(a,b)/(ab)^(d/2) at
/// t = sqrt(a/b) without half-integer powers.
MatLaurent1c hom_to_univariate(const HomBivariate& f);

/// Gates U_0..U_d reproducing F; one representative of the gauge orbit.
UnitarySeq decompose_homogeneous(const HomBivariate& f, const HaahOptions& opts = {});

// ---------------------------------------------------------------------------
// Non-commuting variables.

using Word = std::vector<int>;  // letters in 1..n

/// F(x_1..x_n) = sum over words w of length d of C_w x_{w_1} ... x_{w_d}.
struct NCHomPoly {
  int n = 0;
  int d = 0;
  std::map<Word, Eigen::MatrixXcd> coeffs;
};

inline constexpr long kMaxDenseWords = 4096;

/// Special-unitarity check for n x n gates.
void validate_sun(const std::vector<Eigen::MatrixXcd>& gates, int n, double tol = kUnitaryTol);

/// Expands U_0 diag(x_1..x_n) U_1 ... diag(x_1..x_n) U_d over words: the
/// coefficient of w is U_0 E_{w_1} U_1 ... E_{w_d} U_d with E_j the j-th
/// diagonal selector. Refuses n^d > 4096.
NCHomPoly nc_build_product(const std::vector<Eigen::MatrixXcd>& gates, int n);

/// sum_w C_w (x) X_{w_1} ... X_{w_d} for k x k operators X_1..X_n.
Eigen::MatrixXcd nc_evaluate(const NCHomPoly& p, const std::vector<Eigen::MatrixXcd>& ops);

/// Direct evaluation of the gate chain with V = sum_j |j><j| (x) X_j.
Eigen::MatrixXcd nc_evaluate_chain(const std::vector<Eigen::MatrixXcd>& gates,
                                   const std::vector<Eigen::MatrixXcd>& ops);

struct OperatorTuple {
  std::vector<Eigen::MatrixXcd> ops;
  bool unitary = true;  // whether the unitarity condition applies to this tuple
};

struct NCReport {
  bool homogeneous_ok = false;  // i)
  bool unitary_ok = true;       // ii) on every unitary sample
  bool det_ok = true;           // iii) on every sample
  double unitarity_residual = 0;
  double det_residual = 0;  // relative
  int unitary_samples = 0;
  int det_samples = 0;

  bool pass() const { return homogeneous_ok && unitary_ok && det_ok; }
};

/// Necessary conditions at finitely many operator tuples. This samples the
/// conditions; it does not prove them for all Hilbert spaces.
NCReport nc_check_conditions(const NCHomPoly& p, const std::vector<OperatorTuple>& samples, double unitary_tol = 1e-9,
                             double det_rel_tol = 1e-8);

/// `count` unitary tuples and `count` Gaussian (non-unitary) tuples of k x k
/// operators.
std::vector<OperatorTuple> nc_sample_tuples(Rng& rng, int n, int k, int count);

}  // namespace qspdc
