#include "qspdc/json_io.hpp"

#include "qspdc/error.hpp"

namespace qspdc::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw FormatError(where + ": " + what);
}

double number_from(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>()).get_d();
    } catch (const FormatError& e) {
      fail(where, e.what());
    }
  }
  fail(where, "expected a number");
}

mpq_class rational_from(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const FormatError& e) {
      fail(where, e.what());
    }
  }
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  fail(where, "exact values must be \"p/q\" strings");
}

template <class M, class Entry>
M mat2_from(const json& j, const std::string& where, Entry entry) {
  if (!j.is_array() || j.size() != 4) fail(where, "a matrix is four [re, im] pairs in row-major order");
  M m;
  for (int k = 0; k < 4; ++k) m.a[k] = entry(j[k], where + "[" + std::to_string(k) + "]");
  return m;
}

template <std::size_t V, class S>
json poly_json(const Laurent<V, Mat2<S>>& f) {
  json coeffs = json::array();
  for (const auto& [e, c] : f.terms()) coeffs.push_back({{"e", e}, {"m", matrix_json(c)}});
  return {{"vars", V}, {"backend", Backend<S>::name}, {"coeffs", std::move(coeffs)}};
}

template <std::size_t V, class S>
Laurent<V, Mat2<S>> poly_from(const json& coeffs) {
  typename Laurent<V, Mat2<S>>::Terms terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::string where = "coeffs[" + std::to_string(i) + "]";
    const json& rec = coeffs[i];
    if (!rec.is_object() || !rec.contains("e") || !rec.contains("m")) fail(where, "record needs \"e\" and \"m\"");
    const json& e = rec["e"];
    if (!e.is_array() || e.size() != V) fail(where, "exponent must list " + std::to_string(V) + " integers");
    Exponent<V> key;
    for (std::size_t v = 0; v < V; ++v) {
      if (!e[v].is_number_integer()) fail(where, "exponents must be integers");
      key[v] = e[v].get<int>();
    }
    Mat2<S> m;
    if constexpr (Backend<S>::exact)
      m = mat2q_from(rec["m"], where + ".m");
    else
      m = mat2c_from(rec["m"], where + ".m");
    auto [it, inserted] = terms.try_emplace(key, m);
    if (!inserted) fail(where, "duplicate exponent");
  }
  return Laurent<V, Mat2<S>>(std::move(terms));
}

}  // namespace

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json complex_json(const GaussRational& z) { return json::array({rational_string(z.re), rational_string(z.im)}); }

Complex complex_from(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) fail(where, "expected [re, im]");
  return {number_from(j[0], where), number_from(j[1], where)};
}

GaussRational gauss_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected [\"p/q\", \"p/q\"]");
  return {rational_from(j[0], where), rational_from(j[1], where)};
}

json matrix_json(const Mat2c& m) {
  json out = json::array();
  for (const auto& z : m.a) out.push_back(complex_json(z));
  return out;
}

json matrix_json(const Mat2q& m) {
  json out = json::array();
  for (const auto& z : m.a) out.push_back(complex_json(z));
  return out;
}

Mat2c mat2c_from(const json& j, const std::string& where) { return mat2_from<Mat2c>(j, where, complex_from); }

Mat2q mat2q_from(const json& j, const std::string& where) { return mat2_from<Mat2q>(j, where, gauss_from); }

json dense_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd dense_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) fail(where, "expected a list of rows");
  const auto rows = j.size(), cols = j[0].size();
  Eigen::MatrixXcd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) fail(where, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = complex_from(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

json polynomial_json(const AnyMatLaurent& f) {
  return std::visit([](const auto& p) { return poly_json(p); }, f);
}

AnyMatLaurent polynomial_from(const json& j) {
  if (!j.is_object()) fail("polynomial", "expected an object");
  if (!j.contains("vars") || !j["vars"].is_number_integer()) fail("polynomial", "missing integer \"vars\"");
  if (!j.contains("coeffs") || !j["coeffs"].is_array()) fail("polynomial", "missing \"coeffs\" array");
  const int vars = j["vars"].get<int>();
  const std::string backend = j.value("backend", std::string("float"));
  if (backend != "float" && backend != "exact") fail("polynomial", "backend must be \"float\" or \"exact\"");
  const bool exact = backend == "exact";
  const json& c = j["coeffs"];
  if (vars == 1) return exact ? AnyMatLaurent(poly_from<1, GaussRational>(c)) : AnyMatLaurent(poly_from<1, Complex>(c));
  if (vars == 2) return exact ? AnyMatLaurent(poly_from<2, GaussRational>(c)) : AnyMatLaurent(poly_from<2, Complex>(c));
  fail("polynomial", "\"vars\" must be 1 or 2");
}

json sequence_json(const UnitarySeq& seq) {
  json mats = json::array();
  for (const auto& m : seq.mats) mats.push_back(matrix_json(m));
  json out{{"mats", std::move(mats)}};
  if (seq.word) out["word"] = *seq.word;
  return out;
}

UnitarySeq sequence_from(const json& j) {
  if (!j.is_object() || !j.contains("mats") || !j["mats"].is_array()) fail("sequence", "missing \"mats\" array");
  UnitarySeq seq;
  for (std::size_t i = 0; i < j["mats"].size(); ++i)
    seq.mats.push_back(mat2c_from(j["mats"][i], "mats[" + std::to_string(i) + "]"));
  if (j.contains("word")) {
    if (!j["word"].is_string()) fail("sequence", "\"word\" must be a string");
    seq.word = j["word"].get<std::string>();
  }
  return seq;
}

json decomposition_json(const PrimDecomp& dec, double residual) {
  json projs = json::array();
  for (const auto& p : dec.projs) projs.push_back(matrix_json(p));
  return {{"e0", matrix_json(dec.e0)}, {"projs", std::move(projs)}, {"residual", residual}};
}

PrimDecomp decomposition_from(const json& j) {
  if (!j.is_object() || !j.contains("e0") || !j.contains("projs")) fail("decomposition", "needs \"e0\" and \"projs\"");
  PrimDecomp dec;
  dec.e0 = mat2c_from(j["e0"], "e0");
  for (std::size_t i = 0; i < j["projs"].size(); ++i)
    dec.projs.push_back(mat2c_from(j["projs"][i], "projs[" + std::to_string(i) + "]"));
  return dec;
}

json gates_json(const std::vector<Eigen::MatrixXcd>& gates) {
  json g = json::array();
  for (const auto& m : gates) g.push_back(dense_json(m));
  return {{"n", gates.empty() ? 0 : gates.front().rows()}, {"gates", std::move(g)}};
}

std::vector<Eigen::MatrixXcd> gates_from(const json& j) {
  if (!j.is_object() || !j.contains("gates") || !j["gates"].is_array()) fail("gates", "missing \"gates\" array");
  std::vector<Eigen::MatrixXcd> out;
  for (std::size_t i = 0; i < j["gates"].size(); ++i)
    out.push_back(dense_from(j["gates"][i], "gates[" + std::to_string(i) + "]"));
  return out;
}

json nc_json(const NCHomPoly& p) {
  json coeffs = json::array();
  for (const auto& [w, c] : p.coeffs) coeffs.push_back({{"word", w}, {"m", dense_json(c)}});
  return {{"n", p.n}, {"d", p.d}, {"coeffs", std::move(coeffs)}};
}

NCHomPoly nc_from(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("d") || !j.contains("coeffs"))
    fail("nc polynomial", "needs \"n\", \"d\" and \"coeffs\"");
  NCHomPoly p;
  p.n = j["n"].get<int>();
  p.d = j["d"].get<int>();
  for (std::size_t i = 0; i < j["coeffs"].size(); ++i) {
    const std::string where = "coeffs[" + std::to_string(i) + "]";
    const json& rec = j["coeffs"][i];
    if (!rec.contains("word") || !rec.contains("m")) fail(where, "record needs \"word\" and \"m\"");
    p.coeffs.emplace(rec["word"].get<Word>(), dense_from(rec["m"], where + ".m"));
  }
  return p;
}

json certificate_json(const DecompositionCertificate& cert) {
  json out{{"verdict", to_string(cert.verdict)}, {"note", cert.note}};
  if (cert.exact_obstruction) {
    out["corner_products"] = json::array(
        {matrix_json((*cert.exact_obstruction)[0]), matrix_json((*cert.exact_obstruction)[1])});
  } else if (cert.obstruction) {
    out["corner_products"] = json::array({matrix_json((*cert.obstruction)[0]), matrix_json((*cert.obstruction)[1])});
  } else {
    out["corner_products"] = nullptr;
  }
  if (cert.witness) out["witness"] = sequence_json(*cert.witness);
  out["residuals"] = {{"witness", cert.witness_residual}};
  return out;
}

json family_json(const CounterexampleFamily& f) {
  return {{"alpha0", complex_json(f.alpha0)},
          {"k", f.k},
          {"alpha1", complex_json(f.alpha1)},
          {"gamma0", complex_json(f.gamma0)},
          {"gamma1", complex_json(f.gamma1)},
          {"coefficients",
           {{"A", complex_json(f.A)},
            {"B", complex_json(f.B)},
            {"C", complex_json(f.C)},
            {"D", complex_json(f.D)},
            {"E", complex_json(f.E)},
            {"F", complex_json(f.F)},
            {"G", complex_json(f.G)},
            {"H", complex_json(f.H)},
            {"I", complex_json(f.I)}}},
          {"E_over_A", complex_json(f.E / f.A)},
          {"scale", f.scale},
          {"concurrent", f.concurrent},
          {"residuals", {{"equations", f.equation_residual}, {"lines", f.line_residual}}}};
}

json binec_json(const BinecReport& r) {
  return {{"da", r.da},
          {"db", r.db},
          {"deg_a", r.deg_a},
          {"deg_b", r.deg_b},
          {"property_1", r.degree_ok},
          {"property_2", r.unitary_ok},
          {"property_3", r.parity_ok},
          {"residuals", {{"unitarity", r.unitarity_residual}, {"det", r.det_residual}}},
          {"samples", r.samples},
          {"pass", r.pass()}};
}

json univariate_json(const UnivariateReport& r) {
  return {{"claimed_degree", r.claimed_degree},
          {"degree", r.degree},
          {"property_1", r.degree_ok},
          {"property_2", r.unitary_ok},
          {"property_3", r.parity_ok},
          {"residuals", {{"unitarity", r.unitarity_residual}, {"det", r.det_residual}}},
          {"samples", r.samples},
          {"pass", r.pass()}};
}

json hom_json(const HomReport& r) {
  return {{"d", r.d},
          {"condition_i", r.homogeneous_ok},
          {"condition_ii", r.unitary_ok},
          {"condition_iii", r.det_ok},
          {"residuals", {{"unitarity", r.unitarity_residual}, {"det", r.det_residual}}},
          {"samples", r.samples},
          {"pass", r.pass()}};
}

json config_json(const SearchConfig& c) {
  return {{"da", c.da},
          {"db", c.db},
          {"grid_n", c.grid_n},
          {"learning_rate", c.learning_rate},
          {"max_iter", c.max_iter},
          {"threshold", c.threshold},
          {"restarts", c.restarts},
          {"seed", c.seed},
          {"symmetric", c.symmetric},
          {"match_tol", c.match_tol}};
}

SearchConfig config_from(const json& j, SearchConfig c) {
  if (!j.is_object()) fail("config", "expected an object");
  try {
    c.da = j.value("da", c.da);
    c.db = j.value("db", c.db);
    c.grid_n = j.value("grid_n", c.grid_n);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.max_iter = j.value("max_iter", c.max_iter);
    c.threshold = j.value("threshold", c.threshold);
    c.restarts = j.value("restarts", c.restarts);
    c.seed = j.value("seed", c.seed);
    c.symmetric = j.value("symmetric", c.symmetric);
    c.match_tol = j.value("match_tol", c.match_tol);
  } catch (const json::exception& e) {
    fail("config", e.what());
  }
  return c;
}

json survey_record_json(const SurveyRecord& r) {
  json out{{"sample", r.sample},
           {"restart", r.restart},
           {"objective", r.objective},
           {"verdict", to_string(r.verdict)},
           {"residual", r.residual}};
  out["word"] = r.word.empty() ? json(nullptr) : json(r.word);
  return out;
}

json survey_summary_json(const SurveyReport& r) {
  json counts = json::object();
  for (Verdict v : {Verdict::Decomposable, Verdict::NotDecomposable, Verdict::NotDecomposableBySearch,
                    Verdict::Inconclusive}) {
    auto it = r.counts.find(v);
    counts[to_string(v)] = it == r.counts.end() ? 0 : it->second;
  }
  return {{"summary", true},
          {"requested", r.requested},
          {"samples", r.samples},
          {"restarts_used", r.restarts_used},
          {"counts", std::move(counts)},
          {"words", r.words},
          {"non_decomposable_fraction", r.non_decomposable_fraction()},
          {"objective", {{"max", r.max_objective}, {"median", r.median_objective}}}};
}

}  // namespace qspdc::io
