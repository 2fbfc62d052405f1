#pragma once

// The two-parameter family behind the (2,2) counterexample: given alpha_0 and
// real k, alpha_1 is fixed by requiring four lines in the complex plane (the
// linear conditions on the constant term E) to meet in one point.

#include <vector>

#include "qspdc/laurent.hpp"

namespace qspdc {

struct CounterexampleFamily {
  Complex alpha0;
  double k = 0;
  Complex alpha1, gamma0, gamma1;
  /// Coefficients normalized to A = F = 1 before scaling, then multiplied by `scale`.
  Complex A, B, C, D, E, F, G, H, I;
  double scale = 0;  // |A| from the normalization
  /// Residuals of the two real equations and of the four line equations
  /// (relative to A = F = 1).
  double equation_residual = 0;
  double line_residual = 0;
  /// False when the lines are parallel or coincide so that they do not meet
  /// in a single point; E is then not determined and the polynomial is not unitary.
  bool concurrent = false;
};

/// x and y of the consistency condition, both purely imaginary, for A = F = 1.
std::array<Complex, 2> family_equations(Complex alpha0, double k, Complex alpha1);

struct FamilyOptions {
  int grid = 21;
  double box = 15.0;
  int max_iter = 100;
  double dedupe = 1e-6;
};

/// Multi-start damped Newton for alpha_1; returns distinct solutions ordered by
/// start-grid index. Throws DomainError for alpha0 = 0 or k = 0.
std::vector<CounterexampleFamily> solve_family(Complex alpha0, double k, const FamilyOptions& opts = {});

/// Builds the member for a given alpha_1 (no solving).
CounterexampleFamily family_member(Complex alpha0, double k, Complex alpha1);

/// P and Q with the family's coefficients assembled into F.
MatLaurent2c to_polynomial(const CounterexampleFamily& fam);

}  // namespace qspdc
