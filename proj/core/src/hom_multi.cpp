#include "qspdc/hom_multi.hpp"

#include <algorithm>
#include <numbers>

namespace qspdc {

Mat2c HomBivariate::coeff(int j) const {
  auto it = coeffs.find(j);
  return it == coeffs.end() ? Mat2c::zero() : it->second;
}

Mat2c HomBivariate::evaluate(Complex a, Complex b) const {
  Mat2c m = Mat2c::zero();
  for (const auto& [j, c] : coeffs) m += c * (std::pow(a, j) * std::pow(b, d - j));
  return m;
}

MatLaurent2c to_laurent(const HomBivariate& f) {
  MatLaurent2c::Terms terms;
  for (const auto& [j, c] : f.coeffs) terms.emplace(Exponent<2>{j, f.d - j}, c);
  return MatLaurent2c(std::move(terms));
}

int homogeneous_degree(const MatLaurent2c& f) {
  if (f.is_zero()) return 0;
  const int d = f.terms().begin()->first[0] + f.terms().begin()->first[1];
  for (const auto& [e, c] : f.terms())
    if (e[0] + e[1] != d)
      throw ShapeError("term a^" + std::to_string(e[0]) + " b^" + std::to_string(e[1]) + " is not of total degree " +
                       std::to_string(d));
  return d;
}

HomBivariate hom_from_laurent(const MatLaurent2c& f, int d) {
  HomBivariate h;
  h.d = d;
  for (const auto& [e, c] : f.terms()) {
    if (e[0] < 0 || e[1] < 0 || e[0] + e[1] != d)
      throw ShapeError("term a^" + std::to_string(e[0]) + " b^" + std::to_string(e[1]) +
                       " is not a homogeneous monomial of degree " + std::to_string(d));
    h.coeffs.emplace(e[0], c);
  }
  return h;
}

double max_coeff_distance(const HomBivariate& f, const HomBivariate& g) {
  return max_coeff_distance(to_laurent(f), to_laurent(g));
}

std::string HomReport::first_failure() const {
  if (!homogeneous_ok) return "condition_i";
  if (!unitary_ok) return "condition_ii";
  if (!det_ok) return "condition_iii";
  return "";
}

HomReport check_hom_conditions(const HomBivariate& f, double tol) {
  HomReport r;
  r.d = f.d;
  r.homogeneous_ok = f.d >= 0 && std::all_of(f.coeffs.begin(), f.coeffs.end(),
                                             [&](const auto& kv) { return kv.first >= 0 && kv.first <= f.d; });

  std::vector<std::pair<Complex, Complex>> points;
  const int g = std::max(5, f.d + 1);
  for (int k = 0; k < g; ++k)
    for (int l = 0; l < g; ++l)
      points.emplace_back(std::polar(1.0, 2 * std::numbers::pi * k / g), std::polar(1.0, 2 * std::numbers::pi * l / g));
  Rng rng(0x5eed'0002);
  for (int k = 0; k < 10; ++k) {
    const Complex a = random_phase(rng);
    points.emplace_back(a, random_phase(rng));
  }
  for (const auto& [a, b] : points) {
    const Mat2c m = f.evaluate(a, b);
    r.unitarity_residual = std::max(r.unitarity_residual, frobenius(adjoint(m) * m - Mat2c::identity()));
  }
  r.samples = static_cast<int>(points.size());
  r.unitary_ok = r.unitarity_residual <= tol;

  // det F(a,b) = sum_{j,k} (C_j[00] C_k[11] - C_j[01] C_k[10]) a^{j+k} b^{2d-j-k}.
  std::map<int, Complex> det_poly;
  for (const auto& [j, cj] : f.coeffs)
    for (const auto& [k, ck] : f.coeffs) det_poly[j + k] += cj.a[0] * ck.a[3] - cj.a[1] * ck.a[2];
  r.det_residual = std::abs(det_poly[f.d] - 1.0);
  for (const auto& [m, c] : det_poly)
    if (m != f.d) r.det_residual = std::max(r.det_residual, std::abs(c));
  r.det_ok = r.det_residual <= tol;
  return r;
}

HomBivariate synthesize_homogeneous(const UnitarySeq& seq) {
  validate(seq);
  HomBivariate f;
  f.coeffs[0] = seq.mats.front();
  for (std::size_t i = 1; i < seq.mats.size(); ++i) {
    std::map<int, Mat2c> next;
    for (const auto& [j, c] : f.coeffs) {
      next[j + 1] += Mat2c{{c.a[0], 0.0, c.a[2], 0.0}} * seq.mats[i];
      next[j] += Mat2c{{0.0, c.a[1], 0.0, c.a[3]}} * seq.mats[i];
    }
    std::erase_if(next, [](const auto& kv) { return is_zero(kv.second); });
    f.coeffs = std::move(next);
    ++f.d;
  }
  return f;
}

Mat2c evaluate_hom_chain(const UnitarySeq& seq, Complex a, Complex b) {
  Mat2c m = seq.mats.front();
  const Mat2c d = Mat2c::diag(a, b);
  for (std::size_t i = 1; i < seq.mats.size(); ++i) m = m * d * seq.mats[i];
  return m;
}

MatLaurent1c hom_to_univariate(const HomBivariate& f) {
  MatLaurent1c::Terms terms;
  for (const auto& [j, c] : f.coeffs) terms.emplace(Exponent<1>{2 * j - f.d}, c);
  return MatLaurent1c(std::move(terms));
}

UnitarySeq decompose_homogeneous(const HomBivariate& f, const HaahOptions& opts) {
  const MatLaurent1c reduced = hom_to_univariate(f);
  const UnivariateReport check = validate_univariate(reduced, f.d);
  if (!check.pass())
    throw DecompositionError(0, "homogeneous input maps to a univariate polynomial violating " + check.first_failure());
  return to_unitary_sequence(haah_decompose(reduced, opts), f.d);
}

// ---------------------------------------------------------------------------

void validate_sun(const std::vector<Eigen::MatrixXcd>& gates, int n, double tol) {
  if (gates.empty()) throw ShapeError("gate sequence is empty");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& u = gates[i];
    if (u.rows() != n || u.cols() != n)
      throw ShapeError("gate " + std::to_string(i) + " is " + std::to_string(u.rows()) + "x" +
                       std::to_string(u.cols()) + ", expected " + std::to_string(n) + "x" + std::to_string(n));
    const double unit = (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).norm();
    const double d = std::abs(u.determinant() - 1.0);
    if (unit > tol || d > tol)
      throw NotUnitary(i, "unitarity residual " + std::to_string(unit) + ", det residual " + std::to_string(d));
  }
}

NCHomPoly nc_build_product(const std::vector<Eigen::MatrixXcd>& gates, int n) {
  if (n < 1) throw ShapeError("variable count must be positive");
  validate_sun(gates, n);
  const int d = static_cast<int>(gates.size()) - 1;
  long words = 1;
  for (int i = 0; i < d; ++i) {
    words *= n;
    if (words > kMaxDenseWords)
      throw ShapeError("n^d exceeds the dense word limit of " + std::to_string(kMaxDenseWords));
  }
  NCHomPoly p;
  p.n = n;
  p.d = d;
  p.coeffs.emplace(Word{}, gates.front());
  for (int i = 1; i <= d; ++i) {
    std::map<Word, Eigen::MatrixXcd> next;
    for (const auto& [w, c] : p.coeffs) {
      for (int j = 1; j <= n; ++j) {
        // C E_j U = (column j of C) (row j of U).
        Eigen::MatrixXcd m = c.col(j - 1) * gates[i].row(j - 1);
        if (m.norm() <= kTruncTol) continue;
        Word w2 = w;
        w2.push_back(j);
        next.emplace(std::move(w2), std::move(m));
      }
    }
    p.coeffs = std::move(next);
  }
  return p;
}

namespace {

int check_ops(const std::vector<Eigen::MatrixXcd>& ops, int n) {
  if (static_cast<int>(ops.size()) != n)
    throw ShapeError("expected " + std::to_string(n) + " operators, got " + std::to_string(ops.size()));
  const auto k = ops.front().rows();
  for (const auto& x : ops)
    if (x.rows() != k || x.cols() != k) throw ShapeError("operators must all be square of the same size");
  return static_cast<int>(k);
}

}  // namespace

Eigen::MatrixXcd nc_evaluate(const NCHomPoly& p, const std::vector<Eigen::MatrixXcd>& ops) {
  const int k = check_ops(ops, p.n);
  const int n = p.n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n * k, n * k);
  for (const auto& [w, c] : p.coeffs) {
    if (c.rows() != n || c.cols() != n) throw ShapeError("coefficient is not n x n");
    Eigen::MatrixXcd xw = Eigen::MatrixXcd::Identity(k, k);
    for (int letter : w) {
      if (letter < 1 || letter > n) throw ShapeError("word letter out of range");
      xw = xw * ops[letter - 1];
    }
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) out.block(r * k, s * k, k, k) += c(r, s) * xw;
  }
  return out;
}

Eigen::MatrixXcd nc_evaluate_chain(const std::vector<Eigen::MatrixXcd>& gates,
                                   const std::vector<Eigen::MatrixXcd>& ops) {
  const int n = static_cast<int>(gates.front().rows());
  const int k = check_ops(ops, n);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(k, k);
  auto lift = [&](const Eigen::MatrixXcd& u) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n * k, n * k);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) m.block(r * k, s * k, k, k) = u(r, s) * id;
    return m;
  };
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(n * k, n * k);
  for (int j = 0; j < n; ++j) v.block(j * k, j * k, k, k) = ops[j];
  Eigen::MatrixXcd out = lift(gates.front());
  for (std::size_t i = 1; i < gates.size(); ++i) out = out * v * lift(gates[i]);
  return out;
}

NCReport nc_check_conditions(const NCHomPoly& p, const std::vector<OperatorTuple>& samples, double unitary_tol,
                             double det_rel_tol) {
  NCReport r;
  r.homogeneous_ok = p.n >= 1 && p.d >= 0;
  for (const auto& [w, c] : p.coeffs) {
    const bool letters_ok = std::all_of(w.begin(), w.end(), [&](int x) { return x >= 1 && x <= p.n; });
    if (static_cast<int>(w.size()) != p.d || !letters_ok || c.rows() != p.n || c.cols() != p.n)
      r.homogeneous_ok = false;
  }
  if (!r.homogeneous_ok) {
    r.unitary_ok = r.det_ok = false;
    return r;
  }
  for (const auto& sample : samples) {
    const Eigen::MatrixXcd m = nc_evaluate(p, sample.ops);
    if (sample.unitary) {
      const double res = (m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).norm();
      r.unitarity_residual = std::max(r.unitarity_residual, res);
      ++r.unitary_samples;
    }
    const auto k = sample.ops.front().rows();
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(k, k);
    for (const auto& x : sample.ops) prod = prod * x;
    const Complex target = std::pow(prod.determinant(), p.d);
    const Complex got = m.determinant();
    const double rel = std::abs(got - target) / std::max(std::abs(target), 1e-300);
    r.det_residual = std::max(r.det_residual, rel);
    ++r.det_samples;
  }
  r.unitary_ok = r.unitarity_residual <= unitary_tol;
  r.det_ok = r.det_residual <= det_rel_tol;
  return r;
}

std::vector<OperatorTuple> nc_sample_tuples(Rng& rng, int n, int k, int count) {
  std::vector<OperatorTuple> out;
  for (int i = 0; i < count; ++i) {
    OperatorTuple t;
    for (int j = 0; j < n; ++j) t.ops.push_back(random_unitary(rng, k));
    out.push_back(std::move(t));
  }
  for (int i = 0; i < count; ++i) {
    OperatorTuple t{{}, false};
    for (int j = 0; j < n; ++j) t.ops.push_back(random_gaussian_matrix(rng, k));
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace qspdc
