#include <gtest/gtest.h>

#include <cmath>

#include "qspdc/hom_multi.hpp"
#include "support.hpp"

namespace qspdc {
namespace {

using testing::random_sequence;

HomBivariate diag_ab() {
  HomBivariate f;
  f.d = 1;
  f.coeffs[1] = Mat2c::diag(1.0, 0.0);
  f.coeffs[0] = Mat2c::diag(0.0, 1.0);
  return f;
}

std::pair<Complex, Complex> random_pair(Rng& rng) { return {random_phase(rng), random_phase(rng)}; }

TEST(Homogeneous, SignalPassesConditions) {
  const auto r = check_hom_conditions(diag_ab());
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.d, 1);
}

TEST(Homogeneous, SumFailsUnitarity) {
  HomBivariate f = diag_ab();
  f.coeffs[1] += Mat2c::diag(0.0, 1.0);
  f.coeffs[0] += Mat2c::diag(1.0, 0.0);
  const auto r = check_hom_conditions(f);
  EXPECT_TRUE(r.homogeneous_ok);
  EXPECT_FALSE(r.unitary_ok);
  EXPECT_EQ(r.first_failure(), "condition_ii");
}

TEST(Homogeneous, RandomProductPasses) {
  Rng rng(41);
  const auto r = check_hom_conditions(synthesize_homogeneous(random_sequence(rng, 7)));
  EXPECT_TRUE(r.pass());
  EXPECT_LT(r.unitarity_residual, 1e-9);
  EXPECT_GE(r.samples, 64 + 10);
}

TEST(Homogeneous, SynthesizeIdentityPair) {
  const HomBivariate f = synthesize_homogeneous(UnitarySeq{{Mat2c::identity(), Mat2c::identity()}, {}});
  EXPECT_LT(max_coeff_distance(f, diag_ab()), 1e-15);
}

TEST(Homogeneous, SynthesizeHadamardLikePair) {
  const double s = 1.0 / std::sqrt(2.0);
  const Mat2c h{{s, s, -s, s}};
  const UnitarySeq seq{{h, h}, {}};
  const HomBivariate f = synthesize_homogeneous(seq);
  Rng rng(42);
  for (int k = 0; k < 10; ++k) {
    const auto [a, b] = random_pair(rng);
    EXPECT_LT(frobenius(f.evaluate(a, b) - evaluate_hom_chain(seq, a, b)), 1e-14);
  }
}

TEST(Homogeneous, SynthesizeMatchesChain) {
  Rng rng(43);
  const UnitarySeq seq = random_sequence(rng, 9);
  const HomBivariate f = synthesize_homogeneous(seq);
  EXPECT_EQ(f.d, 9);
  for (int k = 0; k < 20; ++k) {
    const auto [a, b] = random_pair(rng);
    EXPECT_LT(frobenius(f.evaluate(a, b) - evaluate_hom_chain(seq, a, b)), 1e-10);
  }
}

TEST(Homogeneous, ExponentMap) {
  HomBivariate f;
  f.d = 2;
  f.coeffs[0] = Mat2c::diag(1.0, 0.0);
  f.coeffs[1] = Mat2c::diag(0.0, 2.0);
  f.coeffs[2] = Mat2c::identity();
  const MatLaurent1c g = hom_to_univariate(f);
  EXPECT_LT(frobenius(g.coeff({-2}) - f.coeffs[0]), 1e-15);
  EXPECT_LT(frobenius(g.coeff({0}) - f.coeffs[1]), 1e-15);
  EXPECT_LT(frobenius(g.coeff({2}) - f.coeffs[2]), 1e-15);
  EXPECT_EQ(g.size(), 3u);
}

TEST(Homogeneous, ReductionPreservesConditions) {
  Rng rng(44);
  for (int d = 1; d <= 8; ++d) {
    const HomBivariate f = synthesize_homogeneous(random_sequence(rng, d));
    ASSERT_TRUE(check_hom_conditions(f).pass());
    EXPECT_TRUE(validate_univariate(hom_to_univariate(f), d).pass()) << "degree " << d;
  }
}

TEST(Homogeneous, DecomposeSignal) {
  const UnitarySeq seq = decompose_homogeneous(diag_ab());
  ASSERT_EQ(seq.slots(), 1);
  // Gauge freedom: U_0 D U_1 with U_0 = V, U_1 = V^dagger for diagonal V.
  EXPECT_LT(max_coeff_distance(synthesize_homogeneous(seq), diag_ab()), 1e-12);
  EXPECT_LT(std::abs(seq.mats[0].a[1]) + std::abs(seq.mats[0].a[2]), 1e-12);
}

TEST(Homogeneous, RoundTripDegreeTen) {
  Rng rng(45);
  for (int i = 0; i < 10; ++i) {
    const HomBivariate f = synthesize_homogeneous(random_sequence(rng, 10));
    const UnitarySeq seq = decompose_homogeneous(f);
    EXPECT_EQ(seq.slots(), 10);
    EXPECT_LT(max_coeff_distance(synthesize_homogeneous(seq), f), 1e-8);
  }
}

TEST(Homogeneous, DecomposeRejectsNonUnitary) {
  HomBivariate f = diag_ab();
  f.coeffs[1] = f.coeffs[1] * Complex(2.0);
  EXPECT_THROW(decompose_homogeneous(f), DecompositionError);
}

TEST(Homogeneous, LaurentEmbedding) {
  Rng rng(46);
  const HomBivariate f = synthesize_homogeneous(random_sequence(rng, 4));
  const MatLaurent2c g = to_laurent(f);
  EXPECT_EQ(homogeneous_degree(g), 4);
  EXPECT_LT(max_coeff_distance(hom_from_laurent(g, 4), f), 1e-15);
  MatLaurent2c bad = g;
  bad.add_term({1, 1}, Mat2c::identity());
  EXPECT_THROW(homogeneous_degree(bad), ShapeError);
}

Eigen::MatrixXcd diag_selector(int n, int j) {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
  e(j - 1, j - 1) = 1.0;
  return e;
}

TEST(NonCommuting, IdentityGatesDegreeOne) {
  const std::vector<Eigen::MatrixXcd> gates(2, Eigen::MatrixXcd::Identity(2, 2));
  const NCHomPoly p = nc_build_product(gates, 2);
  EXPECT_TRUE(p.coeffs.at({1}).isApprox(diag_selector(2, 1)));
  EXPECT_TRUE(p.coeffs.at({2}).isApprox(diag_selector(2, 2)));
}

TEST(NonCommuting, SelectorAlgebra) {
  const std::vector<Eigen::MatrixXcd> gates(3, Eigen::MatrixXcd::Identity(2, 2));
  const NCHomPoly p = nc_build_product(gates, 2);
  auto it = p.coeffs.find({1, 2});
  EXPECT_TRUE(it == p.coeffs.end() || it->second.norm() < 1e-15);
  EXPECT_TRUE(p.coeffs.at({1, 1}).isApprox(diag_selector(2, 1)));
}

TEST(NonCommuting, ScalarSubstitutionMatchesChain) {
  Rng rng(47);
  std::vector<Eigen::MatrixXcd> gates;
  for (int i = 0; i < 4; ++i) gates.push_back(random_sun(rng, 3));
  const NCHomPoly p = nc_build_product(gates, 3);
  for (int k = 0; k < 5; ++k) {
    std::vector<Eigen::MatrixXcd> ops;
    for (int j = 0; j < 3; ++j) ops.push_back(Eigen::MatrixXcd::Constant(1, 1, random_phase(rng)));
    // With 1x1 operators the chain is U_0 diag(x) U_1 diag(x) ... U_d.
    Eigen::MatrixXcd chain = gates[0];
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
    for (int j = 0; j < 3; ++j) d(j, j) = ops[j](0, 0);
    for (int i = 1; i < 4; ++i) chain = chain * d * gates[i];
    EXPECT_LT((nc_evaluate(p, ops) - chain).norm(), 1e-10);
  }
}

TEST(NonCommuting, AllOnesGivesCoefficientSum) {
  Rng rng(48);
  std::vector<Eigen::MatrixXcd> gates;
  for (int i = 0; i < 3; ++i) gates.push_back(random_sun(rng, 2));
  const NCHomPoly p = nc_build_product(gates, 2);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(2, 2);
  for (const auto& [w, c] : p.coeffs) sum += c;
  const std::vector<Eigen::MatrixXcd> ones(2, Eigen::MatrixXcd::Ones(1, 1));
  EXPECT_LT((nc_evaluate(p, ones) - sum).norm(), 1e-12);
  EXPECT_LT((sum - gates[0] * gates[1] * gates[2]).norm(), 1e-12);
}

TEST(NonCommuting, UnitaryOperatorsGiveUnitary) {
  Rng rng(49);
  std::vector<Eigen::MatrixXcd> gates;
  for (int i = 0; i < 3; ++i) gates.push_back(random_sun(rng, 2));
  const NCHomPoly p = nc_build_product(gates, 2);
  const std::vector<Eigen::MatrixXcd> ops{random_unitary(rng, 2), random_unitary(rng, 2)};
  const Eigen::MatrixXcd m = nc_evaluate(p, ops);
  EXPECT_LT((m.adjoint() * m - Eigen::MatrixXcd::Identity(4, 4)).norm(), 1e-10);
  EXPECT_LT((m - nc_evaluate_chain(gates, ops)).norm(), 1e-10);
}

TEST(NonCommuting, CommutingSubstitutionMatchesHomogeneous) {
  Rng rng(50);
  const UnitarySeq seq = random_sequence(rng, 3);
  std::vector<Eigen::MatrixXcd> gates;
  for (const Mat2c& u : seq.mats) {
    Eigen::MatrixXcd g(2, 2);
    g << u.a[0], u.a[1], u.a[2], u.a[3];
    gates.push_back(g);
  }
  const NCHomPoly p = nc_build_product(gates, 2);
  const HomBivariate f = synthesize_homogeneous(seq);
  for (int k = 0; k < 5; ++k) {
    const auto [a, b] = random_pair(rng);
    const std::vector<Eigen::MatrixXcd> ops{Eigen::MatrixXcd::Constant(1, 1, a), Eigen::MatrixXcd::Constant(1, 1, b)};
    const Eigen::MatrixXcd m = nc_evaluate(p, ops);
    const Mat2c h = f.evaluate(a, b);
    EXPECT_LT(std::abs(m(0, 0) - h.a[0]) + std::abs(m(0, 1) - h.a[1]) + std::abs(m(1, 0) - h.a[2]) +
                  std::abs(m(1, 1) - h.a[3]),
              1e-10);
  }
}

TEST(NonCommuting, ConditionsHoldAndPerturbationIsCaught) {
  Rng rng(51);
  for (int n : {2, 3}) {
    std::vector<Eigen::MatrixXcd> gates;
    for (int i = 0; i < 3; ++i) gates.push_back(random_sun(rng, n));
    NCHomPoly p = nc_build_product(gates, n);
    for (int k = 1; k <= 3; ++k) {
      const auto samples = nc_sample_tuples(rng, n, k, 10);
      EXPECT_TRUE(nc_check_conditions(p, samples).pass()) << "n=" << n << " k=" << k;
    }
    p.coeffs.begin()->second(0, 0) += 0.1;
    const auto r = nc_check_conditions(p, nc_sample_tuples(rng, n, 2, 10));
    EXPECT_FALSE(r.unitary_ok);
  }
}

TEST(NonCommuting, RefusesLargeDenseExpansion) {
  Rng rng(52);
  std::vector<Eigen::MatrixXcd> gates;
  for (int i = 0; i < 9; ++i) gates.push_back(random_sun(rng, 3));
  EXPECT_THROW(nc_build_product(gates, 3), ShapeError);
}

TEST(NonCommuting, RejectsNonUnitaryGate) {
  std::vector<Eigen::MatrixXcd> gates(2, Eigen::MatrixXcd::Identity(2, 2));
  gates[1] *= 2.0;
  EXPECT_THROW(nc_build_product(gates, 2), NotUnitary);
}

}  // namespace
}  // namespace qspdc
