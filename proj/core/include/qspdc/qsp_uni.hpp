#pragma once

// Univariate quantum signal processing: products of SU(2) gates interleaved
// with the signal diag(t, 1/t), their characterization, and the unique
// factorization into primitive matrices E_P(t) = t P + t^-1 (I - P).

#include <optional>
#include <string>
#include <vector>

#include "qspdc/laurent.hpp"

namespace qspdc {

inline constexpr double kUnitaryTol = 1e-10;

/// Modulation gates U_0..U_d, optionally with the variable carried by each of
/// the d signal slots ('a' or 'b').
struct UnitarySeq {
  std::vector<Mat2c> mats;
  std::optional<std::string> word;

  int slots() const { return mats.empty() ? 0 : static_cast<int>(mats.size()) - 1; }
};

/// Throws NotUnitary / ShapeError when the sequence violates its invariants.
void validate(const UnitarySeq& seq, double tol = kUnitaryTol);

/// Unique factorization F(t) = e0 * E_{projs[0]}(t) * ... * E_{projs[d-1]}(t).
struct PrimDecomp {
  Mat2c e0 = Mat2c::identity();
  std::vector<Mat2c> projs;
  /// Max coefficient-wise distance between the rebuilt product and the input.
  double residual = 0;
};

/// E_P(t) = t P + t^-1 (I - P).
MatLaurent1c primitive(const Mat2c& proj);
/// E_P(t)^-1 = E_P(1/t) = t^-1 P + t (I - P).
MatLaurent1c primitive_inverse(const Mat2c& proj);
/// diag(t, 1/t).
MatLaurent1c signal_matrix();

/// U_0 diag(t,1/t) U_1 ... diag(t,1/t) U_d.
MatLaurent1c build_product(const UnitarySeq& seq);

/// Direct chain evaluation of the product at one point (no polynomial algebra).
Mat2c evaluate_chain(const UnitarySeq& seq, Complex t);

struct UnivariateReport {
  int claimed_degree = 0;
  int degree = 0;
  bool degree_ok = false;     // property 1: deg F <= d
  bool unitary_ok = false;    // property 2: F(t) in SU(2) on the circle
  bool parity_ok = false;     // property 3: F(-t) = (-1)^d F(t)
  double unitarity_residual = 0;  // max ||F^dagger F - I||_F over samples
  double det_residual = 0;        // max |det F - 1| over samples
  int samples = 0;

  bool pass() const { return degree_ok && unitary_ok && parity_ok; }
  /// "property_1" / "property_2" / "property_3" of the first failing check, or "".
  std::string first_failure() const;
};

/// Checks the three defining properties of univariate QSP products against
/// degree bound `d`. Unitarity is sampled on 2*deg+5 equispaced points plus 16
/// pseudo-random points (fixed internal seed).
UnivariateReport validate_univariate(const MatLaurent1c& f, int d, double tol = 1e-9);

/// Leading-coefficient projector C^dagger C / Tr[C^dagger C].
Mat2c leading_projector(const Mat2c& leading);

struct HaahOptions {
  /// Largest rebuild error accepted after refinement.
  double peel_tol = 1e-6;
  /// A single peeling step aborting when the coefficients it must cancel
  /// exceed this norm: the input is far from the QSP class.
  double abort_tol = 1e-2;
  /// Least-squares polish of the peeled factors when the rebuild error
  /// exceeds `refine_above`. The peel amplifies input rounding by the ratio of
  /// inner to extremal coefficient sizes at every step.
  bool refine = true;
  double refine_above = 1e-12;
  int refine_iters = 30;
  /// Right/left splits of the peel tried, nearest the middle first, until the
  /// rebuild error drops to `accept_tol`.
  int max_splits = 5;
  double accept_tol = 1e-10;
  /// Float decomposition refuses inputs above this degree: the plain
  /// recursion loses roughly a digit every few degrees.
  int max_degree = 64;
};

/// Peels P_d, P_{d-1}, ... from the right: P_d = C_d^dagger C_d / Tr, then
/// F <- F E_{P_d}(1/t), which strictly lowers the degree for inputs in the
/// QSP class. The peeled factors are then refined by Levenberg-Marquardt on
/// the coefficient mismatch. Throws DecompositionError naming the first step
/// whose cancelled coefficients exceeded the tolerance.
PrimDecomp haah_decompose(const MatLaurent1c& f, const HaahOptions& opts = {});

/// e0 * prod_i E_{P_i}(t).
MatLaurent1c rebuild(const PrimDecomp& dec);

/// Converts a primitive factorization into gates U_0..U_n with n = target_slots
/// (>= number of projectors, same parity). Extra slots are filled with the
/// identity pair diag(t,1/t) Y diag(t,1/t) = Y, Y = [[0,1],[-1,0]]. The
/// result is one of many gauge-equivalent sequences.
UnitarySeq to_unitary_sequence(const PrimDecomp& dec, int target_slots = -1);

/// F(t) built from X-rotation phases, U_k = exp(i phi_k sigma_X).
struct XRotationReport {
  MatLaurent1c product;
  ScalarLaurent1c p;  // F_00
  ScalarLaurent1c q;  // F_01
  int degree = 0;
  /// Bottom row equals (-Q*(1/t), P*(1/t)) coefficient-wise.
  bool entry_structure_ok = false;
  /// F(1/t) = sigma_X F(t) sigma_X, i.e. P has real and Q imaginary coefficients.
  bool reflection_ok = false;
  /// P(-t) = (-1)^d P(t) and Q(-t) = (-1)^d Q(t).
  bool parity_ok = false;
  double residual = 0;
  /// max_e |P_{-e} - (-1)^d P_e| and |Q_{-e} - (-1)^{d-1} Q_e|; reported only,
  /// these reciprocity relations do not hold for generic phases.
  double reciprocity_residual_p = 0;
  double reciprocity_residual_q = 0;

  bool pass() const { return entry_structure_ok && reflection_ok && parity_ok; }
};

XRotationReport build_xrotation_product(const std::vector<double>& phis, double tol = 1e-10);

}  // namespace qspdc
