#include <gtest/gtest.h>

#include <cmath>

#include "qspdc/alt_bi.hpp"
#include "qspdc/f22.hpp"
#include "qspdc/family.hpp"

namespace qspdc {
namespace {

GaussRational gq(long rn, long rd, long in, long id) {
  mpq_class re(rn, rd), im(in, id);
  re.canonicalize();
  im.canonicalize();
  return {re, im};
}

TEST(Counterexample, PrintedCoefficients) {
  const ExactCounterexample ce = counterexample_f22();
  EXPECT_EQ(ce.p.coeff({0, 2}), -gq(122, 37, 8, 37));
  EXPECT_EQ(ce.q.coeff({-2, 2}), gq(56, 37, 114, 37));
  EXPECT_EQ(ce.p.coeff({0, 0}), gq(692, 111, -719, 222));
  EXPECT_EQ(ce.scale.squared(), mpq_class(36 * 37, 625 * 493));
}

TEST(Counterexample, IdentitiesHoldExactly) {
  const F22Report r = verify_f22_identities();
  EXPECT_TRUE(r.symmetry_ok);
  EXPECT_TRUE(r.unitarity_ok);
  EXPECT_TRUE(r.determinant_ok);
  EXPECT_TRUE(r.magnitude_ok);
  EXPECT_TRUE(r.corners_ok);
  EXPECT_TRUE(r.failures.empty());
}

TEST(Counterexample, PerturbationBreaksUnitarity) {
  ExactCounterexample ce = counterexample_f22();
  auto terms = ce.p.terms();
  terms[{0, 0}] += GaussRational(mpq_class(1, 1000));
  ce.p = ScalarLaurent2q(std::move(terms));
  ce.rescaled = su2_form(ce.p, ce.q);
  const F22Report r = check_f22_identities(ce);
  EXPECT_FALSE(r.unitarity_ok);
  EXPECT_FALSE(r.pass());
  EXPECT_FALSE(r.failures.empty());
}

TEST(Counterexample, SymmetryBreaks) {
  ExactCounterexample ce = counterexample_f22();
  auto terms = ce.q.terms();
  terms[{2, 0}] += GaussRational(1);
  ce.q = ScalarLaurent2q(std::move(terms));
  ce.rescaled = su2_form(ce.p, ce.q);
  EXPECT_FALSE(check_f22_identities(ce).symmetry_ok);
}

TEST(Counterexample, FloatVersionIsUnitaryOnTorus) {
  const MatLaurent2c f = f22();
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      const Complex a = std::polar(1.0, 0.9 * i), b = std::polar(1.0, 0.7 * j + 0.1);
      const Mat2c m = evaluate(f, std::array{a, b});
      EXPECT_LT(su2_residual(m), 1e-12);
    }
}

TEST(Family, ReferenceSolve) {
  const auto sols = solve_family(Complex(1, 1), 3.0);
  ASSERT_EQ(sols.size(), 2u);
  const Complex r1(85.0 / 37, -29.0 / 37), r2(9, -10);
  bool saw1 = false, saw2 = false;
  for (const auto& s : sols) {
    if (std::abs(s.alpha1 - r1) < 1e-9) saw1 = true;
    if (std::abs(s.alpha1 - r2) < 1e-9) saw2 = true;
    EXPECT_LT(s.equation_residual, 1e-10);
  }
  EXPECT_TRUE(saw1);
  EXPECT_TRUE(saw2);
}

TEST(Family, FirstSolutionReproducesCounterexample) {
  const CounterexampleFamily fam = family_member(Complex(1, 1), 3.0, Complex(85.0 / 37, -29.0 / 37));
  EXPECT_TRUE(fam.concurrent);
  EXPECT_LT(fam.line_residual, 1e-10);
  const Complex ea = fam.E / fam.A;
  EXPECT_NEAR(ea.real(), 692.0 / 111, 1e-9);
  EXPECT_NEAR(ea.imag(), -719.0 / 222, 1e-9);
  EXPECT_NEAR(std::abs(fam.A), 6.0 / 25 * std::sqrt(37.0 / 493), 1e-9);
  EXPECT_NEAR(fam.scale, 6.0 / 25 * std::sqrt(37.0 / 493), 1e-9);
  EXPECT_LT(max_coeff_distance(to_polynomial(fam), f22()), 1e-9);
}

TEST(Family, RootRelations) {
  const Complex a0(1, 1), a1(85.0 / 37, -29.0 / 37);
  const double k = 3.0;
  const CounterexampleFamily fam = family_member(a0, k, a1);
  const Complex i(0, 1);
  EXPECT_LT(std::abs(fam.gamma0 - i * k * a0), 1e-12);
  EXPECT_LT(std::abs(fam.gamma1 - a1 / (i * k)), 1e-12);
  const double s = fam.scale;
  EXPECT_LT(std::abs(fam.B / s + (a0 + a1)), 1e-12);
  EXPECT_LT(std::abs(fam.C / s - a0 * a1), 1e-12);
  EXPECT_LT(std::abs(fam.G / s + (a0 + std::conj(a1))), 1e-12);
  EXPECT_LT(std::abs(fam.H / s - a0 * std::conj(a1)), 1e-12);
}

TEST(Family, ConcurrentMembersPassConditionsAndFailCornerTest) {
  for (const auto& fam : solve_family(Complex(1, 1), 3.0)) {
    if (!fam.concurrent) continue;
    const MatLaurent2c f = to_polynomial(fam);
    EXPECT_TRUE(check_binec(f, 2, 2).pass());
    EXPECT_EQ(corner_test(f).verdict, Verdict::NotDecomposable);
  }
}

TEST(Family, EquationsVanishAtRoot) {
  const auto xy = family_equations(Complex(1, 1), 3.0, Complex(85.0 / 37, -29.0 / 37));
  EXPECT_LT(std::abs(xy[0]) + std::abs(xy[1]), 1e-10);
  const auto off = family_equations(Complex(1, 1), 3.0, Complex(1.0, 1.0));
  EXPECT_GT(std::abs(off[0]) + std::abs(off[1]), 1e-3);
}

TEST(Family, RejectsDegenerateParameters) {
  EXPECT_THROW(solve_family(Complex(0, 0), 3.0), DomainError);
  EXPECT_THROW(solve_family(Complex(1, 1), 0.0), DomainError);
}

TEST(Family, Deterministic) {
  const auto a = solve_family(Complex(1, 1), 3.0);
  const auto b = solve_family(Complex(1, 1), 3.0);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].alpha1, b[i].alpha1);
}

}  // namespace
}  // namespace qspdc
