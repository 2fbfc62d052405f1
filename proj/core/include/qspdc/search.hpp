#pragma once

// Numerical search for SU(2)-valued bivariate polynomials: the unitarity
// defect of (P, Q) integrated over the torus by trigonometric quadrature,
// gradient descent from random starts, and a decomposition test that tries
// every assignment of a and b to the univariate primitive factors of F(t, t).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qspdc/alt_bi.hpp"
#include "qspdc/laurent.hpp"
#include "qspdc/random.hpp"

namespace qspdc {

struct SearchConfig {
  int da = 2;
  int db = 2;
  int grid_n = 2;  // N: quadrature on (2N+1) x (2N+1) roots of unity
  double learning_rate = 0.5;
  int max_iter = 3000;
  double threshold = 1e-12;
  int restarts = 16;
  std::uint64_t seed = 0;
  /// P(1/a,1/b) = P(a,b), Q(1/a,1/b) = -Q(a,b); otherwise every coefficient is free.
  bool symmetric = true;
  /// Coefficient-wise tolerance when comparing a rebuilt product to F.
  double match_tol = 1e-6;
};

/// Throws DomainError unless da, db >= 0, N >= max(da, db) and the numeric fields are positive.
void validate(const SearchConfig& cfg);

/// Real coordinates for P and Q. Each basis function is z^e, or z^e +- z^-e
/// in the symmetric parameterization; theta holds the real parts of all
/// complex coefficients followed by their imaginary parts.
class Parameterization {
 public:
  Parameterization(int da, int db, bool symmetric);

  int da() const { return da_; }
  int db() const { return db_; }
  bool symmetric() const { return symmetric_; }
  /// Number of complex coefficients (P first, then Q).
  int complex_size() const { return static_cast<int>(p_basis_.size() + q_basis_.size()); }
  int real_size() const { return 2 * complex_size(); }

  ScalarLaurent2c p(const std::vector<double>& theta) const;
  ScalarLaurent2c q(const std::vector<double>& theta) const;
  /// F = [[P, Q], [-Q~, P~]].
  MatLaurent2c matrix(const std::vector<double>& theta) const;
  /// Orthogonal projection of (P, Q) onto the parameterized subspace.
  std::vector<double> coordinates(const ScalarLaurent2c& p, const ScalarLaurent2c& q) const;

  struct Basis {
    Exponent<2> e;
    int mirror_sign;  // 0: z^e alone, +1: z^e + z^-e, -1: z^e - z^-e
  };
  const std::vector<Basis>& p_basis() const { return p_basis_; }
  const std::vector<Basis>& q_basis() const { return q_basis_; }

 private:
  ScalarLaurent2c combine(const std::vector<Basis>& basis, const std::vector<double>& theta, int offset) const;

  int da_, db_;
  bool symmetric_;
  std::vector<Basis> p_basis_, q_basis_;
};

/// Torus average of (1 - |P|^2 - |Q|^2)^2 by the trapezoidal rule on the
/// (2N+1)^2 roots-of-unity grid. The rule is exact when P and Q each have
/// exponents of one parity per variable (as QSP entries do); otherwise the grid
/// is enlarged to (4N+1)^2. Throws DomainError if a degree exceeds N.
double unitarity_defect(const ScalarLaurent2c& p, const ScalarLaurent2c& q, int n);

/// Same average on an explicit m x m grid (no exactness guarantee).
double unitarity_defect_on_grid(const ScalarLaurent2c& p, const ScalarLaurent2c& q, int m);

/// The defect as a function of parameterization coordinates, with basis
/// values cached on the grid.
class DefectObjective {
 public:
  DefectObjective(const Parameterization& param, int n);

  double value(const std::vector<double>& theta) const;
  /// Value and exact gradient with respect to theta.
  double value_and_gradient(const std::vector<double>& theta, std::vector<double>& grad) const;

  const Parameterization& param() const { return param_; }

 private:
  void fields(const std::vector<double>& theta, std::vector<Complex>& p, std::vector<Complex>& q) const;

  Parameterization param_;
  int points_ = 0;
  std::vector<std::vector<Complex>> p_values_, q_values_;
};

/// Gradient of the defect at (P, Q) with respect to the coordinates of `param`.
std::vector<double> defect_gradient(const Parameterization& param, const ScalarLaurent2c& p,
                                    const ScalarLaurent2c& q, int n);

struct DescentResult {
  std::vector<double> theta;
  double objective = 0;
  int iterations = 0;
  bool converged = false;
};

/// Gradient descent with Barzilai-Borwein step lengths, halving the step while
/// the objective fails to decrease.
DescentResult descend(const DefectObjective& obj, std::vector<double> theta, const SearchConfig& cfg);

/// Random start: every coefficient of P and Q complex Gaussian with standard
/// deviation 1/sqrt(count), then projected onto the parameterization.
std::vector<double> random_start(const Parameterization& param, Rng& rng);

struct Candidate {
  int restart = 0;
  MatLaurent2c f;
  std::vector<double> theta;
  double objective = 0;
  int iterations = 0;
};

/// Converged candidates (objective <= threshold), ordered by restart index.
/// Restart i draws from derive_seed(cfg.seed, i).
std::vector<Candidate> gradient_search(const SearchConfig& cfg);

/// Runs restarts [first, first + count) and returns the converged ones in order.
std::vector<Candidate> run_restarts(const SearchConfig& cfg, int first, int count);

/// Multiset permutations of da a's and db b's in lexicographic order.
std::vector<std::string> assignment_words(int da, int db);

/// Factors F(t, t) univariately and tries every word: decomposable with a
/// witness on the first match within `tol`, not-decomposable-by-search if none
/// matches, inconclusive if F(t, t) cannot be factored into da + db primitives.
DecompositionCertificate permutation_decompose(const MatLaurent2c& f, int da, int db, double tol = 1e-6,
                                               const HaahOptions& opts = {});

struct SurveyRecord {
  int sample = 0;
  int restart = 0;
  double objective = 0;
  Verdict verdict = Verdict::Inconclusive;
  std::string word;
  double residual = 0;  // witness residual, or the best mismatch over all words
};

struct SurveyReport {
  SearchConfig config;
  int requested = 0;
  int samples = 0;
  int restarts_used = 0;
  std::map<Verdict, int> counts;
  std::map<std::string, int> words;
  double max_objective = 0;
  double median_objective = 0;
  std::vector<SurveyRecord> records;

  int decomposable() const;
  /// Fraction of samples without a decomposition (certified or by search).
  double non_decomposable_fraction() const;
};

/// Collects up to n converged candidates (restart budget max(cfg.restarts, 200 n))
/// and classifies each: permutation search first, then the corner test for the
/// ones the search could not decompose.
SurveyReport survey(const SearchConfig& cfg, int n_samples);

}  // namespace qspdc
