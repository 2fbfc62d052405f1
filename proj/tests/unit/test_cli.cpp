#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "qspdc/json_io.hpp"

namespace qspdc {
namespace {

namespace fs = std::filesystem;
using io::json;

struct Result {
  int code = -1;
  std::string out, err;
};

Result qspdc(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string tmp(const std::string& name) {
  const fs::path dir(QSPDC_TEST_TMP);
  fs::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json load(const std::string& path) { return json::parse(slurp(path)); }

void save(const std::string& path, const json& j) { std::ofstream(path) << j.dump(); }

TEST(Cli, Usage) {
  EXPECT_EQ(qspdc({}).code, cli::kUsage);
  EXPECT_EQ(qspdc({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(qspdc({"--help"}).code, cli::kOk);
  EXPECT_EQ(qspdc({"decomp-uni"}).code, cli::kUsage);
  EXPECT_EQ(qspdc({"decomp-uni", "--in", tmp("does_not_exist.json")}).code, cli::kUsage);
}

TEST(Cli, RandomInputNeedsSeed) {
  const Result r = qspdc({"synth-uni", "--da", "3"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("--seed"), std::string::npos);
  EXPECT_EQ(qspdc({"search", "--da", "1", "--db", "1"}).code, cli::kUsage);
  EXPECT_EQ(qspdc({"survey", "--samples", "1"}).code, cli::kUsage);
}

TEST(Cli, UnivariateRoundTrip) {
  const std::string poly = tmp("uni_poly.json"), dec = tmp("uni_dec.json"), again = tmp("uni_again.json");
  ASSERT_EQ(qspdc({"synth-uni", "--seed", "1", "--da", "6", "--out", poly}).code, cli::kOk);
  const json p = load(poly);
  EXPECT_EQ(p["tool"]["version"], QSPDC_VERSION);
  EXPECT_EQ(p["config"]["seed"], 1);

  ASSERT_EQ(qspdc({"decomp-uni", "--in", poly, "--out", dec}).code, cli::kOk);
  const json d = load(dec);
  EXPECT_EQ(d["projs"].size(), 6u);
  EXPECT_LT(d["residual"].get<double>(), 1e-8);

  // The decomposition report is itself a valid synth-uni input.
  ASSERT_EQ(qspdc({"synth-uni", "--in", dec, "--out", again}).code, cli::kOk);
  const auto f = std::get<MatLaurent1c>(io::polynomial_from(p));
  const auto g = std::get<MatLaurent1c>(io::polynomial_from(load(again)));
  EXPECT_LT(max_coeff_distance(f, g), 1e-8);
}

TEST(Cli, DecompUniRejectsNonUnitary) {
  MatLaurent1c f = signal_matrix() + MatLaurent1c::constant(Mat2c::identity());
  const std::string path = tmp("uni_bad.json");
  save(path, io::polynomial_json(f));
  const Result r = qspdc({"decomp-uni", "--in", path});
  EXPECT_EQ(r.code, cli::kFailure);
  EXPECT_EQ(json::parse(r.out)["failure"], "property_2");
}

TEST(Cli, MalformedRecordIsNamed) {
  json doc = io::polynomial_json(signal_matrix());
  doc["coeffs"][1].erase("m");
  const std::string path = tmp("uni_malformed.json");
  save(path, doc);
  const Result r = qspdc({"decomp-uni", "--in", path});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("coeffs[1]"), std::string::npos) << r.err;

  std::ofstream(tmp("not_json.json")) << "{\"vars\": 1,";
  EXPECT_EQ(qspdc({"decomp-uni", "--in", tmp("not_json.json")}).code, cli::kUsage);
}

TEST(Cli, HomogeneousRoundTrip) {
  const std::string poly = tmp("hom_poly.json");
  ASSERT_EQ(qspdc({"synth-hom", "--seed", "2", "--da", "4", "--out", poly}).code, cli::kOk);
  const Result r = qspdc({"decomp-hom", "--in", poly});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json rep = json::parse(r.out);
  EXPECT_TRUE(rep["conditions"]["pass"].get<bool>());
  EXPECT_LT(rep["residual"].get<double>(), 1e-8);
}

TEST(Cli, DecompHomRejectsMixedDegrees) {
  const std::string poly = tmp("alt_for_hom.json");
  ASSERT_EQ(qspdc({"synth-alt", "--seed", "4", "--da", "2", "--db", "1", "--out", poly}).code, cli::kOk);
  const Result r = qspdc({"decomp-hom", "--in", poly});
  EXPECT_EQ(r.code, cli::kFailure);
  EXPECT_EQ(json::parse(r.out)["failure"], "condition_i");
}

TEST(Cli, CertifyBuiltProduct) {
  const std::string poly = tmp("alt_poly.json");
  ASSERT_EQ(qspdc({"synth-alt", "--seed", "3", "--da", "2", "--db", "2", "--out", poly}).code, cli::kOk);
  const Result r = qspdc({"certify", "--in", poly});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json rep = json::parse(r.out);
  EXPECT_EQ(rep["verdict"], "decomposable");
  EXPECT_TRUE(rep["certificate"].contains("witness"));
  EXPECT_LE(rep["certificate"]["residuals"]["witness"].get<double>(), 1e-6);
}

TEST(Cli, CertifyWithoutMatchIsInconclusive) {
  // No witness can meet a zero tolerance, and the corner test does not apply.
  const std::string poly = tmp("alt_poly_tight.json");
  ASSERT_EQ(qspdc({"synth-alt", "--seed", "5", "--da", "2", "--db", "2", "--out", poly}).code, cli::kOk);
  const Result r = qspdc({"certify", "--in", poly, "--tol", "0"});
  EXPECT_EQ(r.code, cli::kInconclusive);
  EXPECT_EQ(json::parse(r.out)["verdict"], "not-decomposable-by-search");
}

TEST(Cli, CertifyFailsConditions) {
  const std::string poly = tmp("alt_poly_degree.json");
  ASSERT_EQ(qspdc({"synth-alt", "--seed", "6", "--da", "2", "--db", "2", "--out", poly}).code, cli::kOk);
  const Result r = qspdc({"certify", "--in", poly, "--da", "1"});
  EXPECT_EQ(r.code, cli::kFailure);
  EXPECT_FALSE(json::parse(r.out)["conditions"]["property_1"].get<bool>());
}

TEST(Cli, VerifyCounterexample) {
  const std::string path = tmp("f22.json");
  const Result r = qspdc({"verify-f22", "--out", path});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json rep = load(path);
  EXPECT_TRUE(rep["verified"].get<bool>());
  EXPECT_EQ(rep["corner_diagonals"][0][0], "72/10625 + 72/10625i");
  EXPECT_EQ(rep["corner_diagonals"][0][1], "72/10625 - 72/10625i");
  EXPECT_EQ(rep["corner_diagonals"][1][0].get<std::string>().rfind("72/3625", 0), 0u);
  EXPECT_EQ(qspdc({"verify-f22", "--backend", "float"}).code, cli::kOk);

  // Its polynomial is certified non-decomposable, in both backends.
  const std::string poly = tmp("f22_poly.json");
  save(poly, rep["polynomial"]);
  EXPECT_EQ(qspdc({"certify", "--in", poly}).code, cli::kFailure);
  EXPECT_EQ(qspdc({"certify", "--in", poly, "--backend", "float"}).code, cli::kFailure);
}

TEST(Cli, SolveFamily) {
  const Result r = qspdc({"solve-family", "--alpha0", "1+1i", "--k", "3"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json sols = json::parse(r.out)["solutions"];
  ASSERT_EQ(sols.size(), 2u);
  bool found = false;
  for (const auto& s : sols) {
    const double re = s["alpha1"][0], im = s["alpha1"][1];
    found = found || (std::abs(re - 85.0 / 37) < 1e-9 && std::abs(im + 29.0 / 37) < 1e-9);
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(qspdc({"solve-family", "--alpha0", "0"}).code, cli::kUsage);
  EXPECT_EQ(qspdc({"solve-family", "--alpha0", "one"}).code, cli::kUsage);
}

TEST(Cli, SearchAndSurvey) {
  const Result s = qspdc({"search", "--seed", "1", "--da", "1", "--db", "1", "--restarts", "2", "--threshold", "1e-20"});
  ASSERT_EQ(s.code, cli::kOk) << s.err;
  EXPECT_EQ(json::parse(s.out)["config"]["grid_n"], 2);

  const std::vector<std::string> args{"survey", "--seed", "7", "--da", "1", "--db", "1", "--samples", "3"};
  const Result a = qspdc(args), b = qspdc(args);
  ASSERT_EQ(a.code, cli::kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::vector<json> recs;
  for (std::string line; std::getline(lines, line);) recs.push_back(json::parse(line));
  ASSERT_EQ(recs.size(), 4u);
  EXPECT_TRUE(recs.back()["summary"].get<bool>());
  EXPECT_EQ(recs.back()["counts"]["decomposable"], 3);
  EXPECT_EQ(recs.back()["config"]["threshold"], 1e-20);

  // The same run driven by a config file.
  const std::string cfg = tmp("survey_cfg.json");
  save(cfg, json{{"da", 1}, {"db", 1}, {"seed", 7}});
  const Result c = qspdc({"survey", "--in", cfg, "--samples", "3"});
  ASSERT_EQ(c.code, cli::kOk) << c.err;
  EXPECT_EQ(c.out, a.out);
}

TEST(Cli, ReportsAreReproducible) {
  const std::vector<std::string> args{"synth-alt", "--seed", "9", "--da", "2", "--db", "3"};
  EXPECT_EQ(qspdc(args).out, qspdc(args).out);
  const std::string poly = tmp("repro.json");
  ASSERT_EQ(qspdc({"synth-alt", "--seed", "9", "--da", "2", "--db", "3", "--out", poly}).code, cli::kOk);
  const Result x = qspdc({"certify", "--in", poly}), y = qspdc({"certify", "--in", poly});
  EXPECT_EQ(x.code, y.code);
  EXPECT_EQ(x.out, y.out);
}

}  // namespace
}  // namespace qspdc
