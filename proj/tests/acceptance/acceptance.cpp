// Acceptance runner: one PASS/FAIL line per criterion.
//
//   qspdc_acceptance          run all criteria
//   qspdc_acceptance 3 7      run a subset

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qspdc/alt_bi.hpp"
#include "qspdc/f22.hpp"
#include "qspdc/family.hpp"
#include "qspdc/hom_multi.hpp"
#include "qspdc/search.hpp"
#include "../support.hpp"

using namespace qspdc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// 1. Exact identities of the (2,2) counterexample.
Outcome exact_f22() {
  try {
    const F22Report r = verify_f22_identities();
    return {r.pass(), "symmetry, unitarity, determinant, |A|^2 = |F|^2 exact"};
  } catch (const IdentityFailure& e) {
    return {false, e.what()};
  }
}

// 2. Corner products in exact arithmetic.
Outcome corner_numbers() {
  const ExactCounterexample ce = counterexample_f22();
  const DecompositionCertificate cert = corner_test(ce.rescaled);
  if (cert.verdict != Verdict::NotDecomposable || !cert.exact_obstruction)
    return {false, "verdict " + to_string(cert.verdict)};
  const GaussRational s2(ce.scale.squared());
  const auto expected = f22_expected_corner_diagonals();
  std::string got;
  bool ok = true;
  for (int k = 0; k < 2; ++k) {
    const Mat2q m = (*cert.exact_obstruction)[k] * s2;
    for (int d : {0, 3}) {
      ok = ok && m.a[d] == expected[k].a[d];
      got += (got.empty() ? "" : ", ") + to_string(m.a[d]);
    }
  }
  return {ok, "diagonals " + got};
}

// 3. The family solve for alpha0 = 1 + i, k = 3.
Outcome family_solve() {
  const auto sols = solve_family({1, 1}, 3);
  const Complex r1(85.0 / 37, -29.0 / 37), r2(9, -10);
  const CounterexampleFamily* first = nullptr;
  bool has2 = false;
  for (const auto& s : sols) {
    if (std::abs(s.alpha1 - r1) <= 1e-9) first = &s;
    if (std::abs(s.alpha1 - r2) <= 1e-9) has2 = true;
  }
  if (sols.size() != 2 || !first || !has2) return {false, std::to_string(sols.size()) + " solutions"};
  const double e_err = std::abs(first->E / first->A - Complex(692.0 / 111, -719.0 / 222));
  const double s_err = std::abs(first->scale - 6.0 / 25 * std::sqrt(37.0 / 493));
  return {e_err <= 1e-9 && s_err <= 1e-9,
          "2 solutions; E/A error " + fmt(e_err) + ", |A| error " + fmt(s_err)};
}

// 4. Univariate round trip.
Outcome factor_round_trip() {
  Rng rng(404);
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const int d = 1 + i % 20;
    const MatLaurent1c f = build_product(testing::random_sequence(rng, d));
    const PrimDecomp dec = haah_decompose(f);
    worst = std::max(worst, max_coeff_distance(rebuild(dec), f));
    worst = std::max(worst, max_coeff_distance(build_product(to_unitary_sequence(dec, d)), f));
  }
  return {worst <= 1e-8, "200 products, max error " + fmt(worst)};
}

// 5. Homogeneous bivariate round trip.
Outcome homogeneous_round_trip() {
  Rng rng(505);
  double worst = 0;
  int failed = 0;
  for (int i = 0; i < 100; ++i) {
    const int d = 1 + i % 10;
    const HomBivariate f = synthesize_homogeneous(testing::random_sequence(rng, d));
    if (!check_hom_conditions(f).pass()) ++failed;
    worst = std::max(worst, max_coeff_distance(synthesize_homogeneous(decompose_homogeneous(f)), f));
  }
  return {worst <= 1e-8 && failed == 0,
          "100 products, max error " + fmt(worst) + ", condition failures " + std::to_string(failed)};
}

// 6. Degree-one decomposition and the even-projection factorization.
Outcome degree_one() {
  Rng rng(606);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const int db = static_cast<int>(rng() % 7);
    const MatLaurent2c f = build_alt_product(testing::random_sequence(rng, random_word(rng, 1, db)));
    worst = std::max(worst, max_coeff_distance(build_alt_product(decompose_dega1(f)), f));
  }
  double proj_worst = 0;
  for (int i = 0; i < 100; ++i) {
    const MatLaurent1c pi = testing::forward_projection(rng, i % 6);
    proj_worst = std::max(proj_worst, max_coeff_distance(testing::projection_from(decompose_even_projection(pi)), pi));
  }
  return {worst <= 1e-8 && proj_worst <= 1e-8,
          "rebuild error " + fmt(worst) + ", projection residual " + fmt(proj_worst)};
}

// 7. Permutation search controls.
Outcome permutation_controls() {
  const DecompositionCertificate neg = permutation_decompose(f22(), 2, 2);
  if (neg.verdict != Verdict::NotDecomposableBySearch) return {false, "F22 verdict " + to_string(neg.verdict)};
  Rng rng(707);
  double worst = 0;
  int recovered = 0;
  for (int i = 0; i < 50; ++i) {
    const int da = 1 + i % 3, db = 1 + (i / 3) % 3;
    const MatLaurent2c f = build_alt_product(testing::random_sequence(rng, random_word(rng, da, db)));
    const DecompositionCertificate c = permutation_decompose(f, da, db);
    if (c.verdict == Verdict::Decomposable) {
      ++recovered;
      worst = std::max(worst, max_coeff_distance(build_alt_product(*c.witness), f));
    }
  }
  return {recovered == 50 && worst <= 1e-6,
          "F22 best mismatch " + fmt(neg.witness_residual) + "; witnesses " + std::to_string(recovered) +
              "/50, max rebuild error " + fmt(worst)};
}

// 8. Survey statistics.
Outcome survey_statistics() {
  SearchConfig cfg;
  cfg.da = cfg.db = cfg.grid_n = 2;
  cfg.threshold = 1e-20;
  cfg.seed = 8;
  const SurveyReport rep = survey(cfg, 200);
  const double frac = rep.non_decomposable_fraction();
  int aabb = 0;
  for (const char* w : {"aabb", "bbaa"})
    if (rep.words.count(w)) aabb += rep.words.at(w);
  const double share = rep.decomposable() ? static_cast<double>(aabb) / rep.decomposable() : 0;
  return {rep.samples == 200 && frac >= 0.05 && frac <= 0.40 && share >= 0.5,
          std::to_string(rep.samples) + " samples from " + std::to_string(rep.restarts_used) +
              " restarts; non-decomposable " + fmt(100 * frac) + "%, aabb+bbaa " + fmt(100 * share) + "%"};
}

// 9. Gradient against finite differences, quadrature against a finer grid.
Outcome numerical_hygiene() {
  Rng rng(909);
  const Parameterization param(2, 2, true);
  const DefectObjective obj(param, 2);
  std::normal_distribution<double> normal(0, 0.3);
  double worst_grad = 0, worst_quad = 0;
  for (int i = 0; i < 50; ++i) {
    std::vector<double> theta(param.real_size());
    for (double& x : theta) x = normal(rng);
    std::vector<double> grad;
    obj.value_and_gradient(theta, grad);
    double num = 0, den = 0;
    for (std::size_t k = 0; k < theta.size(); ++k) {
      auto tp = theta, tm = theta;
      tp[k] += 1e-6;
      tm[k] -= 1e-6;
      const double fd = (obj.value(tp) - obj.value(tm)) / 2e-6;
      num += (fd - grad[k]) * (fd - grad[k]);
      den += grad[k] * grad[k];
    }
    worst_grad = std::max(worst_grad, std::sqrt(num / den));
    const auto p = param.p(theta), q = param.q(theta);
    worst_quad = std::max(worst_quad, std::abs(unitarity_defect(p, q, 2) - unitarity_defect_on_grid(p, q, 4 * 5)));
  }
  return {worst_grad <= 1e-5 && worst_quad <= 1e-12,
          "gradient relative error " + fmt(worst_grad) + ", quadrature difference " + fmt(worst_quad)};
}

// 10. Non-commuting necessary conditions.
Outcome noncommuting() {
  Rng rng(1010);
  int passed = 0, total = 0, caught = 0;
  for (int n : {2, 3})
    for (int d : {1, 2, 3})
      for (int k : {1, 2, 3}) {
        std::vector<Eigen::MatrixXcd> gates;
        for (int i = 0; i <= d; ++i) gates.push_back(random_sun(rng, n));
        NCHomPoly p = nc_build_product(gates, n);
        const auto samples = nc_sample_tuples(rng, n, k, 5);
        ++total;
        if (nc_check_conditions(p, samples).pass()) ++passed;
        p.coeffs.begin()->second(0, 0) += 1e-3;
        if (!nc_check_conditions(p, samples).pass()) ++caught;
      }
  return {passed == total && caught == total, std::to_string(passed) + "/" + std::to_string(total) +
                                                  " products pass, " + std::to_string(caught) + "/" +
                                                  std::to_string(total) + " perturbations caught"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "exact counterexample identities", exact_f22},
      {2, "corner obstruction numbers", corner_numbers},
      {3, "family solve", family_solve},
      {4, "univariate round trip", factor_round_trip},
      {5, "homogeneous round trip", homogeneous_round_trip},
      {6, "degree-one decomposition", degree_one},
      {7, "permutation search controls", permutation_controls},
      {8, "survey statistics", survey_statistics},
      {9, "numerical hygiene", numerical_hygiene},
      {10, "non-commuting conditions", noncommuting},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::stoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %-34s %s  (%s; %.2f s)\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
