#include "qspdc/search.hpp"

#include <algorithm>
#include <future>
#include <numbers>
#include <optional>
#include <thread>

#include "qspdc/error.hpp"

namespace qspdc {

void validate(const SearchConfig& cfg) {
  if (cfg.da < 0 || cfg.db < 0) throw DomainError("degree bounds must be nonnegative");
  if (cfg.grid_n < std::max({cfg.da, cfg.db, 1}))
    throw DomainError("grid parameter N = " + std::to_string(cfg.grid_n) + " is below max(d_a, d_b)");
  if (!(cfg.learning_rate > 0) || cfg.max_iter <= 0 || !(cfg.threshold > 0) || cfg.restarts <= 0 ||
      !(cfg.match_tol > 0))
    throw DomainError("learning rate, iteration cap, threshold, restart count and match tolerance must be positive");
}

// ---------------------------------------------------------------------------

Parameterization::Parameterization(int da, int db, bool symmetric) : da_(da), db_(db), symmetric_(symmetric) {
  std::vector<Exponent<2>> exps;
  for (int i = -da; i <= da; i += 2)
    for (int j = -db; j <= db; j += 2) exps.push_back({i, j});
  if (!symmetric) {
    for (const auto& e : exps) {
      p_basis_.push_back({e, 0});
      q_basis_.push_back({e, 0});
    }
    return;
  }
  for (const auto& e : exps) {
    if (e > -e) {
      p_basis_.push_back({e, +1});
      q_basis_.push_back({e, -1});
    }
  }
  for (const auto& e : exps)
    if (e == Exponent<2>{0, 0}) p_basis_.push_back({e, 0});
}

ScalarLaurent2c Parameterization::combine(const std::vector<Basis>& basis, const std::vector<double>& theta,
                                          int offset) const {
  if (static_cast<int>(theta.size()) != real_size())
    throw ShapeError("expected " + std::to_string(real_size()) + " coordinates, got " + std::to_string(theta.size()));
  const int n = complex_size();
  ScalarLaurent2c::Terms terms;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Complex c(theta[offset + k], theta[n + offset + k]);
    terms[basis[k].e] += c;
    if (basis[k].mirror_sign != 0) terms[-basis[k].e] += c * double(basis[k].mirror_sign);
  }
  return ScalarLaurent2c(std::move(terms));
}

ScalarLaurent2c Parameterization::p(const std::vector<double>& theta) const { return combine(p_basis_, theta, 0); }

ScalarLaurent2c Parameterization::q(const std::vector<double>& theta) const {
  return combine(q_basis_, theta, static_cast<int>(p_basis_.size()));
}

MatLaurent2c Parameterization::matrix(const std::vector<double>& theta) const {
  const auto pp = p(theta), qq = q(theta);
  return assemble(pp, qq, -adjoint(qq), adjoint(pp));
}

std::vector<double> Parameterization::coordinates(const ScalarLaurent2c& p, const ScalarLaurent2c& q) const {
  const int n = complex_size();
  std::vector<double> theta(2 * n);
  auto fill = [&](const std::vector<Basis>& basis, const ScalarLaurent2c& f, int offset) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      Complex c = f.coeff(basis[k].e);
      if (basis[k].mirror_sign != 0) c = 0.5 * (c + double(basis[k].mirror_sign) * f.coeff(-basis[k].e));
      theta[offset + k] = c.real();
      theta[n + offset + k] = c.imag();
    }
  };
  fill(p_basis_, p, 0);
  fill(q_basis_, q, static_cast<int>(p_basis_.size()));
  return theta;
}

// ---------------------------------------------------------------------------

namespace {

// Values of a^i b^j on the m x m roots-of-unity grid, row-major in (k, l).
std::vector<Complex> monomial_values(const Exponent<2>& e, int m) {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(m) * m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      // Reduce the angle index modulo m before scaling to keep the phase exact.
      const long idx = ((static_cast<long>(e[0]) * k + static_cast<long>(e[1]) * l) % m + m) % m;
      out.push_back(std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(idx) / m));
    }
  return out;
}

std::vector<Complex> field_values(const ScalarLaurent2c& f, int m) {
  std::vector<Complex> out(static_cast<std::size_t>(m) * m);
  for (const auto& [e, c] : f.terms()) {
    const auto v = monomial_values(e, m);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * v[i];
  }
  return out;
}

bool uniform_parity(const ScalarLaurent2c& f) {
  return f.parity(0) != Parity::Mixed && f.parity(1) != Parity::Mixed;
}

}  // namespace

double unitarity_defect_on_grid(const ScalarLaurent2c& p, const ScalarLaurent2c& q, int m) {
  if (m <= 0) throw DomainError("grid size must be positive");
  const auto pv = field_values(p, m), qv = field_values(q, m);
  double sum = 0;
  for (std::size_t i = 0; i < pv.size(); ++i) {
    const double g = 1 - std::norm(pv[i]) - std::norm(qv[i]);
    sum += g * g;
  }
  return sum / static_cast<double>(pv.size());
}

double unitarity_defect(const ScalarLaurent2c& p, const ScalarLaurent2c& q, int n) {
  for (const auto* f : {&p, &q})
    if (f->degree(0) > n || f->degree(1) > n)
      throw DomainError("polynomial degree exceeds the quadrature parameter N = " + std::to_string(n));
  // |P|^2 and |Q|^2 only carry even frequencies under uniform parity; the
  // integrand's frequencies then stay below the first alias 2(2N+1).
  const int m = (uniform_parity(p) && uniform_parity(q)) ? 2 * n + 1 : 4 * n + 1;
  return unitarity_defect_on_grid(p, q, m);
}

DefectObjective::DefectObjective(const Parameterization& param, int n) : param_(param) {
  const int m = 2 * n + 1;
  points_ = m * m;
  auto values = [&](const Parameterization::Basis& b) {
    auto v = monomial_values(b.e, m);
    if (b.mirror_sign != 0) {
      const auto w = monomial_values(-b.e, m);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += double(b.mirror_sign) * w[i];
    }
    return v;
  };
  for (const auto& b : param_.p_basis()) p_values_.push_back(values(b));
  for (const auto& b : param_.q_basis()) q_values_.push_back(values(b));
}

void DefectObjective::fields(const std::vector<double>& theta, std::vector<Complex>& p,
                             std::vector<Complex>& q) const {
  const int n = param_.complex_size();
  const int np = static_cast<int>(p_values_.size());
  p.assign(points_, 0.0);
  q.assign(points_, 0.0);
  for (int k = 0; k < np; ++k) {
    const Complex c(theta[k], theta[n + k]);
    for (int i = 0; i < points_; ++i) p[i] += c * p_values_[k][i];
  }
  for (std::size_t k = 0; k < q_values_.size(); ++k) {
    const Complex c(theta[np + k], theta[n + np + k]);
    for (int i = 0; i < points_; ++i) q[i] += c * q_values_[k][i];
  }
}

double DefectObjective::value(const std::vector<double>& theta) const {
  std::vector<Complex> p, q;
  fields(theta, p, q);
  double sum = 0;
  for (int i = 0; i < points_; ++i) {
    const double g = 1 - std::norm(p[i]) - std::norm(q[i]);
    sum += g * g;
  }
  return sum / points_;
}

double DefectObjective::value_and_gradient(const std::vector<double>& theta, std::vector<double>& grad) const {
  std::vector<Complex> p, q;
  fields(theta, p, q);
  std::vector<double> g(points_);
  double sum = 0;
  for (int i = 0; i < points_; ++i) {
    g[i] = 1 - std::norm(p[i]) - std::norm(q[i]);
    sum += g[i] * g[i];
  }
  const int n = param_.complex_size();
  const int np = static_cast<int>(p_values_.size());
  grad.assign(2 * n, 0.0);
  // d/dRe c = mean(-4 g Re(phi conj(F))), d/dIm c = mean(4 g Im(phi conj(F))).
  auto accumulate = [&](const std::vector<Complex>& phi, const std::vector<Complex>& field, int k) {
    double re = 0, im = 0;
    for (int i = 0; i < points_; ++i) {
      const Complex w = phi[i] * std::conj(field[i]);
      re += g[i] * w.real();
      im += g[i] * w.imag();
    }
    grad[k] = -4 * re / points_;
    grad[n + k] = 4 * im / points_;
  };
  for (int k = 0; k < np; ++k) accumulate(p_values_[k], p, k);
  for (std::size_t k = 0; k < q_values_.size(); ++k) accumulate(q_values_[k], q, np + static_cast<int>(k));
  return sum / points_;
}

std::vector<double> defect_gradient(const Parameterization& param, const ScalarLaurent2c& p,
                                    const ScalarLaurent2c& q, int n) {
  std::vector<double> grad;
  DefectObjective(param, n).value_and_gradient(param.coordinates(p, q), grad);
  return grad;
}

// ---------------------------------------------------------------------------

DescentResult descend(const DefectObjective& obj, std::vector<double> theta, const SearchConfig& cfg) {
  DescentResult r;
  std::vector<double> grad, trial, trial_grad;
  double f = obj.value_and_gradient(theta, grad);
  double step = cfg.learning_rate;
  int it = 0;
  for (; it < cfg.max_iter && f > cfg.threshold; ++it) {
    double ft = 0;
    for (;;) {
      trial = theta;
      for (std::size_t i = 0; i < trial.size(); ++i) trial[i] -= step * grad[i];
      ft = obj.value_and_gradient(trial, trial_grad);
      if (ft < f || step < 1e-16) break;
      step /= 2;
    }
    if (!(ft < f)) break;
    double ss = 0, sy = 0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double s = trial[i] - theta[i];
      ss += s * s;
      sy += s * (trial_grad[i] - grad[i]);
    }
    step = sy > 0 ? std::min(ss / sy, 1e6) : cfg.learning_rate;
    theta.swap(trial);
    grad.swap(trial_grad);
    f = ft;
  }
  r.theta = std::move(theta);
  r.objective = f;
  r.iterations = it;
  r.converged = f <= cfg.threshold;
  return r;
}

std::vector<double> random_start(const Parameterization& param, Rng& rng) {
  std::vector<Exponent<2>> exps;
  for (int i = -param.da(); i <= param.da(); i += 2)
    for (int j = -param.db(); j <= param.db(); j += 2) exps.push_back({i, j});
  const double sd = 1.0 / std::sqrt(2.0 * 2.0 * static_cast<double>(exps.size()));
  std::normal_distribution<double> normal(0.0, sd);
  ScalarLaurent2c::Terms p, q;
  for (const auto& e : exps) {
    const double pr = normal(rng), pi = normal(rng);
    p[e] = Complex(pr, pi);
  }
  for (const auto& e : exps) {
    const double qr = normal(rng), qi = normal(rng);
    q[e] = Complex(qr, qi);
  }
  return param.coordinates(ScalarLaurent2c(std::move(p)), ScalarLaurent2c(std::move(q)));
}

std::vector<Candidate> run_restarts(const SearchConfig& cfg, int first, int count) {
  validate(cfg);
  const Parameterization param(cfg.da, cfg.db, cfg.symmetric);
  const DefectObjective obj(param, cfg.grid_n);
  std::vector<std::optional<Candidate>> slots(count);
  auto work = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(first + i)));
      const DescentResult d = descend(obj, random_start(param, rng), cfg);
      if (!d.converged) continue;
      slots[i] = Candidate{first + i, param.matrix(d.theta), d.theta, d.objective, d.iterations};
    }
  };
  const int workers = std::max(1, std::min<int>(count, static_cast<int>(std::thread::hardware_concurrency())));
  std::vector<std::future<void>> jobs;
  for (int w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, work, count * w / workers, count * (w + 1) / workers));
  for (auto& j : jobs) j.get();
  std::vector<Candidate> out;
  for (auto& s : slots)
    if (s) out.push_back(std::move(*s));
  return out;
}

std::vector<Candidate> gradient_search(const SearchConfig& cfg) { return run_restarts(cfg, 0, cfg.restarts); }

// ---------------------------------------------------------------------------

std::vector<std::string> assignment_words(int da, int db) {
  std::string w = std::string(da, 'a') + std::string(db, 'b');
  std::vector<std::string> out;
  do out.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

namespace {

MatLaurent2c primitive2(const Mat2c& proj, std::size_t var) {
  Exponent<2> up{0, 0}, down{0, 0};
  up[var] = 1;
  down[var] = -1;
  MatLaurent2c f;
  f.add_term(up, proj);
  f.add_term(down, Mat2c::identity() - proj);
  return f;
}

}  // namespace

DecompositionCertificate permutation_decompose(const MatLaurent2c& f, int da, int db, double tol,
                                               const HaahOptions& opts) {
  DecompositionCertificate cert;
  MatLaurent1c::Terms diag_terms;
  for (const auto& [e, c] : f.terms()) diag_terms[Exponent<1>{e[0] + e[1]}] += c;
  PrimDecomp dec;
  try {
    dec = haah_decompose(MatLaurent1c(std::move(diag_terms)), opts);
  } catch (const DecompositionError& e) {
    cert.note = std::string("F(t,t) does not factor: ") + e.what();
    return cert;
  }
  if (static_cast<int>(dec.projs.size()) != da + db) {
    cert.note = "F(t,t) has " + std::to_string(dec.projs.size()) + " primitive factors, expected " +
                std::to_string(da + db);
    return cert;
  }
  double best = std::numeric_limits<double>::infinity();
  for (const std::string& word : assignment_words(da, db)) {
    auto r = MatLaurent2c::constant(dec.e0);
    for (std::size_t i = 0; i < word.size(); ++i) r = r * primitive2(dec.projs[i], word[i] == 'a' ? 0 : 1);
    const double err = max_coeff_distance(r, f);
    best = std::min(best, err);
    if (err <= tol) {
      UnitarySeq seq = to_unitary_sequence(PrimDecomp{nearest_su2(dec.e0), dec.projs});
      seq.word = word;
      cert.verdict = Verdict::Decomposable;
      cert.witness_residual = max_coeff_distance(build_alt_product(seq), f);
      cert.witness = std::move(seq);
      cert.note = "word " + word;
      return cert;
    }
  }
  cert.verdict = Verdict::NotDecomposableBySearch;
  cert.witness_residual = best;
  cert.note = "no assignment word rebuilds F within tolerance";
  return cert;
}

int SurveyReport::decomposable() const {
  auto it = counts.find(Verdict::Decomposable);
  return it == counts.end() ? 0 : it->second;
}

double SurveyReport::non_decomposable_fraction() const {
  if (samples == 0) return 0;
  int n = 0;
  for (Verdict v : {Verdict::NotDecomposable, Verdict::NotDecomposableBySearch}) {
    auto it = counts.find(v);
    if (it != counts.end()) n += it->second;
  }
  return static_cast<double>(n) / samples;
}

SurveyReport survey(const SearchConfig& cfg, int n_samples) {
  validate(cfg);
  if (n_samples <= 0) throw DomainError("sample count must be positive");
  SurveyReport rep;
  rep.config = cfg;
  rep.requested = n_samples;
  const long budget = std::max<long>(cfg.restarts, 200L * n_samples);
  constexpr int kBatch = 64;
  std::vector<double> objectives;
  long next = 0;
  while (rep.samples < n_samples && next < budget) {
    const int count = static_cast<int>(std::min<long>(kBatch, budget - next));
    const auto batch = run_restarts(cfg, static_cast<int>(next), count);
    rep.restarts_used = static_cast<int>(next + count);
    next += count;
    for (const Candidate& c : batch) {
      if (rep.samples == n_samples) break;
      SurveyRecord rec;
      rec.sample = rep.samples;
      rec.restart = c.restart;
      rec.objective = c.objective;
      const auto cert = permutation_decompose(c.f, cfg.da, cfg.db, cfg.match_tol);
      rec.verdict = cert.verdict;
      rec.residual = cert.witness_residual;
      if (cert.verdict == Verdict::Decomposable) {
        rec.word = *cert.witness->word;
        ++rep.words[rec.word];
      } else if (corner_test(c.f).verdict == Verdict::NotDecomposable) {
        rec.verdict = Verdict::NotDecomposable;
      }
      ++rep.counts[rec.verdict];
      objectives.push_back(c.objective);
      rep.records.push_back(rec);
      ++rep.samples;
      rep.restarts_used = c.restart + 1;
    }
  }
  if (!objectives.empty()) {
    std::sort(objectives.begin(), objectives.end());
    rep.max_objective = objectives.back();
    rep.median_objective = objectives[objectives.size() / 2];
  }
  return rep;
}

}  // namespace qspdc
