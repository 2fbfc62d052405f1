#pragma once

// JSON documents exchanged by the command-line tool. Complex numbers are
// [re, im] pairs (exact backend: "p/q" strings); 2x2 matrices are four such
// pairs in row-major order.

#include <nlohmann/json.hpp>

#include "qspdc/alt_bi.hpp"
#include "qspdc/family.hpp"
#include "qspdc/hom_multi.hpp"
#include "qspdc/laurent.hpp"
#include "qspdc/qsp_uni.hpp"
#include "qspdc/search.hpp"

namespace qspdc::io {

using nlohmann::json;

json complex_json(Complex z);
json complex_json(const GaussRational& z);
Complex complex_from(const json& j, const std::string& where);
GaussRational gauss_from(const json& j, const std::string& where);

json matrix_json(const Mat2c& m);
json matrix_json(const Mat2q& m);
Mat2c mat2c_from(const json& j, const std::string& where);
Mat2q mat2q_from(const json& j, const std::string& where);

json dense_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd dense_from(const json& j, const std::string& where);

/// {"vars": 1|2, "backend": "float"|"exact", "coeffs": [{"e": [...], "m": [...]}]}
json polynomial_json(const AnyMatLaurent& f);
/// Throws FormatError naming the offending coefficient record.
AnyMatLaurent polynomial_from(const json& j);

/// {"mats": [matrix...], "word": "ab"} (word optional).
json sequence_json(const UnitarySeq& seq);
UnitarySeq sequence_from(const json& j);

/// {"e0": matrix, "projs": [matrix...], "residual": float}
json decomposition_json(const PrimDecomp& dec, double residual);
PrimDecomp decomposition_from(const json& j);

/// {"n": .., "gates": [dense matrix...]} with dense matrices as rows of pairs.
json gates_json(const std::vector<Eigen::MatrixXcd>& gates);
std::vector<Eigen::MatrixXcd> gates_from(const json& j);

/// {"n": .., "d": .., "coeffs": [{"word": [...], "m": dense}]}
json nc_json(const NCHomPoly& p);
NCHomPoly nc_from(const json& j);

/// {"verdict": .., "corner_products": [matrix, matrix], "residuals": {...}, ...}
json certificate_json(const DecompositionCertificate& cert);

json family_json(const CounterexampleFamily& fam);
json binec_json(const BinecReport& r);
json univariate_json(const UnivariateReport& r);
json hom_json(const HomReport& r);

json config_json(const SearchConfig& cfg);
/// Missing keys keep their defaults.
SearchConfig config_from(const json& j, SearchConfig base = {});

json survey_record_json(const SurveyRecord& r);
json survey_summary_json(const SurveyReport& r);

}  // namespace qspdc::io
