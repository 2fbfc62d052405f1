#include "qspdc/alt_bi.hpp"

#include <algorithm>
#include <numbers>

#include "qspdc/random.hpp"

namespace qspdc {

namespace {

constexpr double kDegreeDropTol = 1e-6;

std::array<Complex, 2> unit_vector_of(const Mat2c& proj) {
  const double n0 = std::sqrt(std::norm(proj.a[0]) + std::norm(proj.a[2]));
  const double n1 = std::sqrt(std::norm(proj.a[1]) + std::norm(proj.a[3]));
  if (n0 >= n1) return {proj.a[0] / n0, proj.a[2] / n0};
  return {proj.a[1] / n1, proj.a[3] / n1};
}

template <std::size_t V>
Laurent<V, Mat2c> prune(const Laurent<V, Mat2c>& f, double tol) {
  typename Laurent<V, Mat2c>::Terms kept;
  for (const auto& [e, c] : f.terms())
    if (frobenius(c) > tol) kept.emplace(e, c);
  return Laurent<V, Mat2c>(std::move(kept));
}

UnitarySeq univariate_gates(const MatLaurent1c& f, const HaahOptions& opts) {
  return to_unitary_sequence(haah_decompose(prune(f, 1e-9), opts));
}

}  // namespace

MatLaurent2c build_alt_product(const UnitarySeq& seq) {
  if (!seq.word) throw ShapeError("bivariate product needs an assignment word");
  validate(seq);
  auto f = MatLaurent2c::constant(seq.mats.front());
  for (std::size_t i = 1; i < seq.mats.size(); ++i) {
    const std::size_t var = (*seq.word)[i - 1] == 'a' ? 0 : 1;
    f = right_multiply(right_multiply_signal(f, var), seq.mats[i]);
  }
  return f;
}

Mat2c evaluate_alt_chain(const UnitarySeq& seq, Complex a, Complex b) {
  if (!seq.word) throw ShapeError("bivariate product needs an assignment word");
  Mat2c m = seq.mats.front();
  for (std::size_t i = 1; i < seq.mats.size(); ++i) {
    const Complex c = (*seq.word)[i - 1] == 'a' ? a : b;
    m = m * Mat2c::diag(c, 1.0 / c) * seq.mats[i];
  }
  return m;
}

std::string BinecReport::first_failure() const {
  if (!degree_ok) return "property_1";
  if (!unitary_ok) return "property_2";
  if (!parity_ok) return "property_3";
  return "";
}

BinecReport check_binec(const MatLaurent2c& f, int da, int db, double tol) {
  BinecReport r;
  r.da = da;
  r.db = db;
  r.deg_a = f.degree(0);
  r.deg_b = f.degree(1);
  r.degree_ok = r.deg_a <= da && r.deg_b <= db;
  r.parity_ok = has_parity_of(f, 0, da) && has_parity_of(f, 1, db);

  std::vector<std::pair<Complex, Complex>> points;
  const int g = 2 * std::max(da, db) + 5;
  for (int k = 0; k < g; ++k)
    for (int l = 0; l < g; ++l)
      points.emplace_back(std::polar(1.0, 2 * std::numbers::pi * k / g), std::polar(1.0, 2 * std::numbers::pi * l / g));
  Rng rng(0x5eed'0003);
  for (int k = 0; k < 16; ++k) {
    const Complex a = random_phase(rng);
    points.emplace_back(a, random_phase(rng));
  }
  for (const auto& [a, b] : points) {
    const Mat2c m = evaluate(f, std::array{a, b});
    r.unitarity_residual = std::max(r.unitarity_residual, frobenius(adjoint(m) * m - Mat2c::identity()));
    r.det_residual = std::max(r.det_residual, std::abs(det(m) - 1.0));
  }
  r.samples = static_cast<int>(points.size());
  r.unitary_ok = r.unitarity_residual <= tol && r.det_residual <= tol;
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Decomposable: return "decomposable";
    case Verdict::NotDecomposable: return "not-decomposable";
    case Verdict::NotDecomposableBySearch: return "not-decomposable-by-search";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

DecompositionCertificate corner_test(const MatLaurent2c& f) {
  const auto cp = corner_products(f);
  DecompositionCertificate cert;
  if (cp.upper_nonzero && cp.lower_nonzero) {
    cert.verdict = Verdict::NotDecomposable;
    cert.obstruction = std::array{cp.upper, cp.lower};
    cert.note = "both corner products are nonzero";
  } else {
    cert.note = "a corner product vanishes; the corner test is only a necessary condition";
  }
  return cert;
}

DecompositionCertificate corner_test(const MatLaurent2q& f) {
  const auto cp = corner_products(f);
  DecompositionCertificate cert;
  if (cp.upper_nonzero && cp.lower_nonzero) {
    cert.verdict = Verdict::NotDecomposable;
    cert.obstruction = std::array{to_float(cp.upper), to_float(cp.lower)};
    cert.exact_obstruction = std::array{cp.upper, cp.lower};
    cert.note = "both corner products are nonzero (exact)";
  } else {
    cert.note = "a corner product vanishes; the corner test is only a necessary condition";
  }
  return cert;
}

EvenProjection decompose_even_projection(const MatLaurent1c& pi, double tol) {
  if (pi.is_zero()) throw DecompositionError(1, "projection polynomial is zero");
  if (pi.parity() != Parity::Even) throw DecompositionError(1, "projection polynomial is not even");
  const double self_adjoint = max_coeff_distance(adjoint(pi), pi);
  const double idempotent = max_coeff_distance(pi * pi, pi);
  if (self_adjoint > tol || idempotent > tol)
    throw DecompositionError(1, "input is not a projection polynomial (self-adjoint residual " +
                                    std::to_string(self_adjoint) + ", idempotency residual " +
                                    std::to_string(idempotent) + ")");

  EvenProjection out;
  MatLaurent1c current = pi;
  for (int step = 1; current.degree() > 0; ++step) {
    const int d = current.degree();
    const Mat2c lead = current.coeff({d});
    const Mat2c h = adjoint(lead) * lead;
    const double tr = trace(h).real();
    if (std::sqrt(tr) <= kTruncTol) throw DecompositionError(step, "leading coefficient has negligible norm");
    // Leading coefficient |psi><phi|; S projects onto phi.
    const Mat2c s = top_eigenprojector(h * Complex(1.0 / tr));
    const MatLaurent1c e = primitive(s);
    const MatLaurent1c next = e * current * adjoint(e);

    MatLaurent1c::Terms kept;
    double residual = 0;
    for (const auto& [x, c] : next.terms()) {
      if (std::abs(x[0]) > d - 2)
        residual = std::max(residual, frobenius(c));
      else
        kept.emplace(x, c);
    }
    if (residual > kDegreeDropTol)
      throw DecompositionError(step, "conjugation did not lower the degree below " + std::to_string(d - 1) +
                                         " (residual " + std::to_string(residual) + ")");
    current = MatLaurent1c(std::move(kept));
    out.projs.push_back(s);
  }

  const Mat2c k = current.coeff({0});
  if (std::abs(trace(k) - 1.0) > kDegreeDropTol)
    throw DecompositionError(static_cast<int>(out.projs.size()) + 1, "constant remainder is not rank one");
  out.psi = unit_vector_of(top_eigenprojector(k));
  out.u = identity_polynomial<1, Complex>();
  for (const Mat2c& s : out.projs) out.u = out.u * primitive_inverse(s);
  return out;
}

MatLaurent2c swap_variables(const MatLaurent2c& f) {
  MatLaurent2c::Terms terms;
  for (const auto& [e, c] : f.terms()) terms.emplace(Exponent<2>{e[1], e[0]}, c);
  return MatLaurent2c(std::move(terms));
}

MatLaurent1c a_slice(const MatLaurent2c& f, int j) {
  MatLaurent1c::Terms terms;
  for (const auto& [e, c] : f.terms())
    if (e[0] == j) terms.emplace(Exponent<1>{e[1]}, c);
  return MatLaurent1c(std::move(terms));
}

UnitarySeq decompose_dega1(const MatLaurent2c& f, const HaahOptions& opts) {
  const int da = f.degree(0);
  const int db = f.degree(1);
  if (da > 1) {
    if (db > 1)
      throw DomainError("both degrees exceed one (deg_a = " + std::to_string(da) + ", deg_b = " +
                        std::to_string(db) + ")");
    UnitarySeq seq = decompose_dega1(swap_variables(f), opts);
    for (char& c : *seq.word) c = (c == 'a') ? 'b' : 'a';
    return seq;
  }

  if (da == 0) {
    UnitarySeq seq = univariate_gates(a_slice(f, 0), opts);
    seq.word = std::string(seq.slots(), 'b');
    return seq;
  }

  const MatLaurent1c m1 = a_slice(f, 1);
  const MatLaurent1c e0 = m1 + a_slice(f, -1);
  const MatLaurent1c pi = prune(adjoint(e0) * m1, 1e-12);
  const EvenProjection ep = decompose_even_projection(pi);

  // F = [E0 U W] diag(a, 1/a) [W^dagger U^dagger] with W e_1 = psi.
  const Mat2c w = su2_with_first_column(ep.psi[0], ep.psi[1]);
  const UnitarySeq left = univariate_gates(right_multiply(e0 * ep.u, w), opts);
  const UnitarySeq right = univariate_gates(left_multiply(adjoint(w), adjoint(ep.u)), opts);

  UnitarySeq seq;
  seq.mats = left.mats;
  seq.mats.insert(seq.mats.end(), right.mats.begin(), right.mats.end());
  seq.word = std::string(left.slots(), 'b') + "a" + std::string(right.slots(), 'b');
  return seq;
}

}  // namespace qspdc
