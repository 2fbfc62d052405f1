#include "cli.hpp"

#ifdef QSPDC_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qspdc/error.hpp"
#include "qspdc/f22.hpp"
#include "qspdc/json_io.hpp"
#include "qspdc/random.hpp"

namespace qspdc::cli {
namespace {

using io::json;

// Input that cannot be read or parsed; always exit 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string in, out;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid_n, samples, da, db, restarts, max_iter;
  std::optional<double> tol, threshold;
  std::string backend = "exact";
  std::string alpha0 = "1+1i";
  double k = 3.0;
};

json read_json(const std::string& path) {
  if (path.empty()) throw UsageError("--in is required");
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

json tool_json() { return {{"name", "qspdc"}, {"version", QSPDC_VERSION}}; }

// Every report carries the tool version and the command it came from.
json stamp(json doc, const std::string& command, json config) {
  doc["tool"] = tool_json();
  doc["command"] = command;
  doc["config"] = std::move(config);
  return doc;
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
  if (!f) throw UsageError("write failed: " + o.out);
}

void emit(const json& doc, const Options& o, std::ostream& out) { emit(doc.dump(2) + "\n", o, out); }

std::uint64_t require_seed(const Options& o) {
  if (!o.seed) throw UsageError("--seed is required for randomized input");
  return *o.seed;
}

// "1+1i", "-2.5-0.5i", "3", "2i", "-i".
Complex parse_complex(std::string s) {
  std::erase(s, ' ');
  auto number = [&](const std::string& t, bool imag) {
    if (imag && (t.empty() || t == "+")) return 1.0;
    if (imag && t == "-") return -1.0;
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size() || t.empty()) throw UsageError("not a complex number: " + s);
    return x;
  };
  if (s.empty()) throw UsageError("empty complex number");
  if (s.back() != 'i') return {number(s, false), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;)
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  if (split == std::string::npos) return {0.0, number(body, true)};
  return {number(body.substr(0, split), false), number(body.substr(split), true)};
}

template <std::size_t V>
Laurent<V, Mat2c> as_float(const AnyMatLaurent& any, const std::string& what) {
  if (const auto* f = std::get_if<Laurent<V, Mat2c>>(&any)) return *f;
  if (const auto* q = std::get_if<Laurent<V, Mat2q>>(&any)) return to_float(*q);
  throw UsageError(what + " expects a polynomial in " + std::to_string(V) + " variable(s)");
}

UnitarySeq random_gates(Rng& rng, int slots, std::optional<std::string> word = {}) {
  UnitarySeq seq;
  for (int i = 0; i <= slots; ++i) seq.mats.push_back(random_su2(rng));
  seq.word = std::move(word);
  return seq;
}

// Input gates from --in (a sequence, or a decomposition to rebuild), else random.
UnitarySeq input_sequence(const Options& o, int default_slots, json& config) {
  if (!o.in.empty()) {
    config["in"] = o.in;
    return io::sequence_from(read_json(o.in));
  }
  const int slots = o.da.value_or(default_slots);
  if (slots < 0) throw UsageError("--da must be non-negative");
  config["seed"] = require_seed(o);
  config["da"] = slots;
  Rng rng(derive_seed(*o.seed, 0));
  return random_gates(rng, slots);
}

int synth_uni(const Options& o, std::ostream& out) {
  json config;
  MatLaurent1c f;
  if (!o.in.empty()) {
    config["in"] = o.in;
    const json doc = read_json(o.in);
    f = doc.contains("e0") ? rebuild(io::decomposition_from(doc)) : build_product(io::sequence_from(doc));
  } else {
    f = build_product(input_sequence(o, 4, config));
  }
  emit(stamp(io::polynomial_json(f), "synth-uni", config), o, out);
  return kOk;
}

int decomp_uni(const Options& o, std::ostream& out) {
  const double tol = o.tol.value_or(1e-9);
  json config{{"in", o.in}, {"tol", tol}};
  const MatLaurent1c f = as_float<1>(io::polynomial_from(read_json(o.in)), "decomp-uni");
  const UnivariateReport check = validate_univariate(f, f.degree(), tol);
  json doc{{"validation", io::univariate_json(check)}};
  if (!check.pass()) {
    doc["verdict"] = "not_qsp";
    doc["failure"] = check.first_failure();
    emit(stamp(doc, "decomp-uni", config), o, out);
    return kFailure;
  }
  try {
    const PrimDecomp dec = haah_decompose(f);
    doc.update(io::decomposition_json(dec, dec.residual));
    doc["sequence"] = io::sequence_json(to_unitary_sequence(dec));
    doc["verdict"] = "decomposed";
    emit(stamp(doc, "decomp-uni", config), o, out);
    return kOk;
  } catch (const DecompositionError& e) {
    doc["verdict"] = "inconclusive";
    doc["note"] = e.what();
    doc["step"] = e.step();
    emit(stamp(doc, "decomp-uni", config), o, out);
    return kInconclusive;
  }
}

int synth_hom(const Options& o, std::ostream& out) {
  json config;
  const UnitarySeq seq = input_sequence(o, 3, config);
  emit(stamp(io::polynomial_json(to_laurent(synthesize_homogeneous(seq))), "synth-hom", config), o, out);
  return kOk;
}

int decomp_hom(const Options& o, std::ostream& out) {
  const double tol = o.tol.value_or(1e-9);
  json config{{"in", o.in}, {"tol", tol}};
  const MatLaurent2c f = as_float<2>(io::polynomial_from(read_json(o.in)), "decomp-hom");
  json doc;
  int d = 0;
  try {
    d = homogeneous_degree(f);
  } catch (const ShapeError& e) {
    doc["verdict"] = "not_homogeneous_qsp";
    doc["failure"] = "condition_i";
    doc["note"] = e.what();
    emit(stamp(doc, "decomp-hom", config), o, out);
    return kFailure;
  }
  const HomBivariate h = hom_from_laurent(f, d);
  const HomReport check = check_hom_conditions(h, tol);
  doc["conditions"] = io::hom_json(check);
  if (!check.pass()) {
    doc["verdict"] = "not_homogeneous_qsp";
    doc["failure"] = check.first_failure();
    emit(stamp(doc, "decomp-hom", config), o, out);
    return kFailure;
  }
  try {
    const UnitarySeq seq = decompose_homogeneous(h);
    doc["verdict"] = "decomposed";
    doc["sequence"] = io::sequence_json(seq);
    doc["residual"] = max_coeff_distance(synthesize_homogeneous(seq), h);
    emit(stamp(doc, "decomp-hom", config), o, out);
    return kOk;
  } catch (const DecompositionError& e) {
    doc["verdict"] = "inconclusive";
    doc["note"] = e.what();
    emit(stamp(doc, "decomp-hom", config), o, out);
    return kInconclusive;
  }
}

int synth_alt(const Options& o, std::ostream& out) {
  json config;
  UnitarySeq seq;
  if (!o.in.empty()) {
    config["in"] = o.in;
    seq = io::sequence_from(read_json(o.in));
  } else {
    const int na = o.da.value_or(2), nb = o.db.value_or(2);
    if (na < 0 || nb < 0) throw UsageError("--da and --db must be non-negative");
    config = {{"seed", require_seed(o)}, {"da", na}, {"db", nb}};
    Rng rng(derive_seed(*o.seed, 0));
    const std::string word = random_word(rng, na, nb);
    seq = random_gates(rng, na + nb, word);
  }
  emit(stamp(io::polynomial_json(build_alt_product(seq)), "synth-alt", config), o, out);
  return kOk;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Decomposable: return kOk;
    case Verdict::NotDecomposable: return kFailure;
    default: return kInconclusive;
  }
}

int certify(const Options& o, std::ostream& out) {
  const AnyMatLaurent any = io::polynomial_from(read_json(o.in));
  const MatLaurent2c f = as_float<2>(any, "certify");
  const auto* exact = std::get_if<MatLaurent2q>(&any);
  const bool use_exact = exact && o.backend == "exact";
  const int da = o.da.value_or(f.degree(0)), db = o.db.value_or(f.degree(1));
  const double tol = o.tol.value_or(1e-6);
  const json config{{"in", o.in}, {"da", da}, {"db", db}, {"tol", tol}, {"backend", use_exact ? "exact" : "float"}};

  const BinecReport conditions = check_binec(f, da, db);
  json doc{{"conditions", io::binec_json(conditions)}};
  auto finish = [&](const DecompositionCertificate& cert) {
    doc["certificate"] = io::certificate_json(cert);
    doc["verdict"] = to_string(cert.verdict);
    emit(stamp(doc, "certify", config), o, out);
    return exit_for(cert.verdict);
  };
  if (!conditions.pass()) {
    DecompositionCertificate cert;
    cert.verdict = Verdict::NotDecomposable;
    cert.note = "necessary condition " + conditions.first_failure() + " fails";
    return finish(cert);
  }
  DecompositionCertificate cert = use_exact ? corner_test(*exact) : corner_test(f);
  if (cert.verdict == Verdict::NotDecomposable) return finish(cert);

  if (f.degree(0) <= 1 || f.degree(1) <= 1) {
    try {
      UnitarySeq seq = decompose_dega1(f);
      const double r = max_coeff_distance(build_alt_product(seq), f);
      if (r <= tol) {
        cert.verdict = Verdict::Decomposable;
        cert.witness = std::move(seq);
        cert.witness_residual = r;
        cert.note = "degree-one constructive decomposition";
        return finish(cert);
      }
    } catch (const Error&) {
      // fall through to the word search
    }
  }
  return finish(permutation_decompose(f, da, db, tol));
}

std::string rational_text(const GaussRational& z) { return to_string(z); }

int verify_f22(const Options& o, std::ostream& out) {
  const bool exact = o.backend == "exact";
  const json config{{"backend", exact ? "exact" : "float"}};
  const ExactCounterexample ce = counterexample_f22();
  json doc;
  bool ok = true;

  F22Report ids;
  try {
    ids = verify_f22_identities();
  } catch (const IdentityFailure& e) {
    ids.failures.push_back(e.what());
  }
  doc["identities"] = {{"symmetry", ids.symmetry_ok},
                       {"unitarity", ids.unitarity_ok},
                       {"determinant", ids.determinant_ok},
                       {"magnitude", ids.magnitude_ok},
                       {"corners", ids.corners_ok},
                       {"failures", ids.failures}};
  ok = ok && ids.pass();
  doc["scale"] = {{"squared", ce.scale.squared().get_str()}, {"value", ce.scale.value()}};

  // Corner products of F itself: s^2 times those of the rescaled polynomial.
  DecompositionCertificate cert;
  if (exact) {
    cert = corner_test(ce.rescaled);
    if (cert.exact_obstruction) {
      const GaussRational s2(ce.scale.squared());
      for (auto& m : *cert.exact_obstruction) m = m * s2;
      json diag = json::array();
      for (const auto& m : *cert.exact_obstruction)
        diag.push_back({rational_text(m.a[0]), rational_text(m.a[3])});
      doc["corner_diagonals"] = diag;
      const auto expected = f22_expected_corner_diagonals();
      for (int k = 0; k < 2; ++k)
        for (int i : {0, 3}) ok = ok && (*cert.exact_obstruction)[k].a[i] == expected[k].a[i];
    }
  } else {
    cert = corner_test(f22());
    doc["conditions"] = io::binec_json(check_binec(f22(), 2, 2));
    ok = ok && check_binec(f22(), 2, 2).pass();
  }
  ok = ok && cert.verdict == Verdict::NotDecomposable;
  doc["certificate"] = io::certificate_json(cert);
  doc["polynomial"] = exact ? io::polynomial_json(ce.rescaled) : io::polynomial_json(f22());
  doc["verified"] = ok;
  emit(stamp(doc, "verify-f22", config), o, out);
  return ok ? kOk : kFailure;
}

int solve_family_cmd(const Options& o, std::ostream& out) {
  const Complex a0 = parse_complex(o.alpha0);
  const json config{{"alpha0", io::complex_json(a0)}, {"k", o.k}};
  const auto sols = solve_family(a0, o.k);
  json list = json::array();
  for (const auto& s : sols) list.push_back(io::family_json(s));
  emit(stamp(json{{"solutions", list}}, "solve-family", config), o, out);
  return sols.empty() ? kInconclusive : kOk;
}

// Defaults, then the --in config file, then flags.
SearchConfig search_config(const Options& o, SearchConfig base) {
  SearchConfig cfg = base;
  bool seeded = o.seed.has_value();
  if (!o.in.empty()) {
    const json j = read_json(o.in);
    seeded = seeded || (j.is_object() && j.contains("seed"));
    cfg = io::config_from(j, cfg);
  }
  if (!seeded) throw UsageError("--seed is required");
  if (o.seed) cfg.seed = *o.seed;
  if (o.da) cfg.da = *o.da;
  if (o.db) cfg.db = *o.db;
  if (o.grid_n) cfg.grid_n = *o.grid_n;
  else cfg.grid_n = std::max({cfg.grid_n, cfg.da, cfg.db});
  if (o.restarts) cfg.restarts = *o.restarts;
  if (o.max_iter) cfg.max_iter = *o.max_iter;
  if (o.threshold) cfg.threshold = *o.threshold;
  if (o.tol) cfg.match_tol = *o.tol;
  try {
    validate(cfg);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

int search_cmd(const Options& o, std::ostream& out) {
  const SearchConfig cfg = search_config(o, {});
  const auto cands = gradient_search(cfg);
  json list = json::array();
  for (const auto& c : cands)
    list.push_back({{"restart", c.restart},
                    {"objective", c.objective},
                    {"iterations", c.iterations},
                    {"polynomial", io::polynomial_json(c.f)}});
  emit(stamp(json{{"candidates", list}}, "search", io::config_json(cfg)), o, out);
  return cands.empty() ? kInconclusive : kOk;
}

int survey_cmd(const Options& o, std::ostream& out) {
  SearchConfig base;
  base.threshold = 1e-20;
  const SearchConfig cfg = search_config(o, base);
  const int n = o.samples.value_or(200);
  if (n <= 0) throw UsageError("--samples must be positive");
  const SurveyReport r = survey(cfg, n);
  std::ostringstream lines;
  for (const auto& rec : r.records) lines << io::survey_record_json(rec).dump() << "\n";
  json summary = io::survey_summary_json(r);
  summary = stamp(summary, "survey", io::config_json(cfg));
  lines << summary.dump() << "\n";
  emit(lines.str(), o, out);
  return r.samples == n ? kOk : kInconclusive;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decomposition tools for univariate and multivariate quantum signal processing", "qspdc"};
  app.set_version_flag("--version", std::string(QSPDC_VERSION));
  app.require_subcommand(1, 1);
  Options o;

  auto add_io = [&](CLI::App* sub, bool in_required) {
    auto* in = sub->add_option("--in", o.in, "input JSON");
    if (in_required) in->required();
    sub->add_option("--out", o.out, "output path (default: stdout)");
  };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "master seed for random input"); };
  auto add_degrees = [&](CLI::App* sub) {
    sub->add_option("--da", o.da, "degree in a (or the univariate degree)");
    sub->add_option("--db", o.db, "degree in b");
  };
  auto add_search = [&](CLI::App* sub) {
    add_io(sub, false);
    add_seed(sub);
    add_degrees(sub);
    sub->add_option("--grid-n", o.grid_n, "quadrature size N");
    sub->add_option("--tol", o.tol, "match tolerance for rebuilt witnesses");
    sub->add_option("--threshold", o.threshold, "descent stopping threshold");
    sub->add_option("--restarts", o.restarts, "random restarts");
    sub->add_option("--max-iter", o.max_iter, "descent iteration cap");
  };

  auto* s_synth_uni = app.add_subcommand("synth-uni", "gates or decomposition -> univariate polynomial");
  add_io(s_synth_uni, false);
  add_seed(s_synth_uni);
  s_synth_uni->add_option("--da", o.da, "degree of a random product");

  auto* s_decomp_uni = app.add_subcommand("decomp-uni", "univariate polynomial -> projector decomposition");
  add_io(s_decomp_uni, true);
  s_decomp_uni->add_option("--tol", o.tol, "validation tolerance");

  auto* s_synth_hom = app.add_subcommand("synth-hom", "gates -> homogeneous bivariate polynomial");
  add_io(s_synth_hom, false);
  add_seed(s_synth_hom);
  s_synth_hom->add_option("--da", o.da, "total degree of a random product");

  auto* s_decomp_hom = app.add_subcommand("decomp-hom", "homogeneous bivariate polynomial -> gates");
  add_io(s_decomp_hom, true);
  s_decomp_hom->add_option("--tol", o.tol, "validation tolerance");

  auto* s_synth_alt = app.add_subcommand("synth-alt", "gates and word -> bivariate polynomial");
  add_io(s_synth_alt, false);
  add_seed(s_synth_alt);
  add_degrees(s_synth_alt);

  auto* s_certify = app.add_subcommand("certify", "necessary conditions, corner test, then decomposition");
  add_io(s_certify, true);
  add_degrees(s_certify);
  s_certify->add_option("--tol", o.tol, "match tolerance for witnesses");
  s_certify->add_option("--backend", o.backend, "exact|float (exact applies to exact input)")
      ->check(CLI::IsMember({"exact", "float"}));

  auto* s_f22 = app.add_subcommand("verify-f22", "check the (2,2) counterexample");
  s_f22->add_option("--out", o.out, "output path (default: stdout)");
  s_f22->add_option("--backend", o.backend, "exact|float")->check(CLI::IsMember({"exact", "float"}));

  auto* s_family = app.add_subcommand("solve-family", "solve for the second root of the counterexample family");
  s_family->add_option("--out", o.out, "output path (default: stdout)");
  s_family->add_option("--alpha0", o.alpha0, "first root, e.g. 1+1i")->capture_default_str();
  s_family->add_option("--k", o.k, "ratio k")->capture_default_str();

  auto* s_search = app.add_subcommand("search", "gradient search for bivariate unitaries");
  add_search(s_search);

  auto* s_survey = app.add_subcommand("survey", "classify converged search samples (JSON lines)");
  add_search(s_survey);
  s_survey->add_option("--samples", o.samples, "converged samples to collect (default 200)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (s_synth_uni->parsed()) return synth_uni(o, out);
    if (s_decomp_uni->parsed()) return decomp_uni(o, out);
    if (s_synth_hom->parsed()) return synth_hom(o, out);
    if (s_decomp_hom->parsed()) return decomp_hom(o, out);
    if (s_synth_alt->parsed()) return synth_alt(o, out);
    if (s_certify->parsed()) return certify(o, out);
    if (s_f22->parsed()) return verify_f22(o, out);
    if (s_family->parsed()) return solve_family_cmd(o, out);
    if (s_search->parsed()) return search_cmd(o, out);
    if (s_survey->parsed()) return survey_cmd(o, out);
  } catch (const UsageError& e) {
    err << "qspdc: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    err << "qspdc: malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    // Invalid gates, shapes or parameters in the input.
    err << "qspdc: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "qspdc: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"qspdc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qspdc::cli
