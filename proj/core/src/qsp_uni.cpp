#include "qspdc/qsp_uni.hpp"

#include <algorithm>
#include <deque>
#include <numbers>
#include <optional>

#include <Eigen/Dense>

#include "qspdc/random.hpp"

namespace qspdc {

namespace {

const Mat2c kPadGate{{0.0, 1.0, -1.0, 0.0}};

Mat2c xrotation(double phi) {
  const Complex c = std::cos(phi);
  const Complex s(0.0, std::sin(phi));
  return Mat2c{{c, s, s, c}};
}

// Unit vector spanning the range of a rank-one projector.
std::pair<Complex, Complex> projector_vector(const Mat2c& p) {
  const double n0 = std::norm(p.a[0]) + std::norm(p.a[2]);
  const double n1 = std::norm(p.a[1]) + std::norm(p.a[3]);
  return n0 >= n1 ? std::pair{p.a[0], p.a[2]} : std::pair{p.a[1], p.a[3]};
}


// Dense coefficient list for exponents lo, lo+1, ..., lo+size-1.
struct Dense {
  int lo = 0;
  std::vector<Mat2c> c;

  int hi() const { return lo + static_cast<int>(c.size()) - 1; }
};

Dense dense_constant(const Mat2c& m) { return Dense{0, {m}}; }

Dense dense_of(const MatLaurent1c& f, int d) {
  Dense out{-d, std::vector<Mat2c>(2 * d + 1, Mat2c{})};
  for (const auto& [e, c] : f.terms()) out.c[e[0] + d] = c;
  return out;
}

// f * (t A + t^-1 B).
Dense times_linear(const Dense& f, const Mat2c& a, const Mat2c& b) {
  Dense out{f.lo - 1, std::vector<Mat2c>(f.c.size() + 2, Mat2c{})};
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    out.c[i + 2] += f.c[i] * a;
    out.c[i] += f.c[i] * b;
  }
  return out;
}

// (t A + t^-1 B) * f.
Dense linear_times(const Mat2c& a, const Mat2c& b, const Dense& f) {
  Dense out{f.lo - 1, std::vector<Mat2c>(f.c.size() + 2, Mat2c{})};
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    out.c[i + 2] += a * f.c[i];
    out.c[i] += b * f.c[i];
  }
  return out;
}

Dense convolve(const Dense& f, const Dense& g) {
  Dense out{f.lo + g.lo, std::vector<Mat2c>(f.c.size() + g.c.size() - 1, Mat2c{})};
  for (std::size_t i = 0; i < f.c.size(); ++i)
    for (std::size_t j = 0; j < g.c.size(); ++j) out.c[i + j] += f.c[i] * g.c[j];
  return out;
}

Mat2c outer(Complex x0, Complex x1, Complex y0, Complex y1) {
  return Mat2c{{x0 * std::conj(y0), x0 * std::conj(y1), x1 * std::conj(y0), x1 * std::conj(y1)}};
}

Dense dense_rebuild(const Mat2c& e0, const std::vector<Mat2c>& projs) {
  Dense f = dense_constant(e0);
  for (const Mat2c& p : projs) f = times_linear(f, p, Mat2c::identity() - p);
  return f;
}

// Writes rebuilt - target into the real vector r (8 entries per exponent in [-d, d]).
double mismatch(const Dense& rebuilt, const Dense& target, Eigen::VectorXd& r) {
  const int d = -target.lo;
  r.setZero(8 * (2 * d + 1));
  double worst = 0;
  for (int e = -d; e <= d; ++e) {
    Mat2c diff = target.c[e + d] * Complex(-1.0);
    if (e >= rebuilt.lo && e <= rebuilt.hi()) diff += rebuilt.c[e - rebuilt.lo];
    for (int k = 0; k < 4; ++k) {
      r[8 * (e + d) + 2 * k] = diff.a[k].real();
      r[8 * (e + d) + 2 * k + 1] = diff.a[k].imag();
    }
    worst = std::max(worst, frobenius(diff));
  }
  return worst;
}

void write_column(const Dense& f, int d, Eigen::Ref<Eigen::VectorXd> col) {
  col.setZero();
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    const int e = f.lo + static_cast<int>(i);
    if (e < -d || e > d) continue;
    for (int k = 0; k < 4; ++k) {
      col[8 * (e + d) + 2 * k] = f.c[i].a[k].real();
      col[8 * (e + d) + 2 * k + 1] = f.c[i].a[k].imag();
    }
  }
}

// exp(i (x sx + y sy + z sz)).
Mat2c su2_exp(double x, double y, double z) {
  const double th = std::sqrt(x * x + y * y + z * z);
  const double s = th > 0 ? std::sin(th) / th : 1.0;
  const Complex i(0.0, 1.0);
  return Mat2c{{std::cos(th) + i * s * z, i * s * Complex(x, -y), i * s * Complex(x, y), std::cos(th) - i * s * z}};
}

const Mat2c kPauli[3] = {Mat2c{{0.0, 1.0, 1.0, 0.0}}, Mat2c{{0.0, Complex(0, -1), Complex(0, 1), 0.0}},
                         Mat2c{{1.0, 0.0, 0.0, -1.0}}};

// Levenberg-Marquardt on (e0, P_1..P_d) minimizing the coefficient mismatch.
// e0 moves as e0 exp(i x.sigma); P = v v^dagger moves as v + delta w, w = v-perp.
double refine_decomposition(PrimDecomp& dec, const MatLaurent1c& f, const HaahOptions& opts) {
  const int d = static_cast<int>(dec.projs.size());
  const Dense target = dense_of(f, d);
  const int rows = 8 * (2 * d + 1);
  const int cols = 3 + 2 * d;
  Eigen::VectorXd r;
  double err = mismatch(dense_rebuild(dec.e0, dec.projs), target, r);
  double lambda = 1e-6;
  for (int it = 0; it < opts.refine_iters && err > 1e-14; ++it) {
    // prefix[i] = e0 E_1 ... E_i, suffix[i] = E_{i+1} ... E_d.
    std::vector<Dense> prefix(d + 1), suffix(d + 1);
    prefix[0] = dense_constant(dec.e0);
    for (int i = 0; i < d; ++i)
      prefix[i + 1] = times_linear(prefix[i], dec.projs[i], Mat2c::identity() - dec.projs[i]);
    suffix[d] = dense_constant(Mat2c::identity());
    for (int i = d - 1; i >= 0; --i)
      suffix[i] = linear_times(dec.projs[i], Mat2c::identity() - dec.projs[i], suffix[i + 1]);

    Eigen::MatrixXd jac(rows, cols);
    for (int k = 0; k < 3; ++k) {
      Dense g = suffix[0];
      for (auto& c : g.c) c = dec.e0 * kPauli[k] * Complex(0.0, 1.0) * c;
      write_column(g, d, jac.col(k));
    }
    std::vector<std::pair<Complex, Complex>> vs(d), ws(d);
    for (int i = 0; i < d; ++i) {
      auto [v0, v1] = projector_vector(dec.projs[i]);
      const double n = std::sqrt(std::norm(v0) + std::norm(v1));
      v0 /= n;
      v1 /= n;
      vs[i] = {v0, v1};
      ws[i] = {-std::conj(v1), std::conj(v0)};
      const Mat2c wv = outer(ws[i].first, ws[i].second, v0, v1);
      const Mat2c dpx = wv + adjoint(wv);
      const Mat2c dpy = (wv - adjoint(wv)) * Complex(0.0, 1.0);
      // dE_P = (t - 1/t) dP.
      const Mat2c* dps[2] = {&dpx, &dpy};
      for (int k = 0; k < 2; ++k) {
        const Dense mid = times_linear(prefix[i], *dps[k], *dps[k] * Complex(-1.0));
        write_column(convolve(mid, suffix[i + 1]), d, jac.col(3 + 2 * i + k));
      }
    }

    // Damped least squares through QR on [J; sqrt(lambda) D]: the normal
    // equations would square an already poor conditioning.
    const Eigen::VectorXd scale = (jac.colwise().squaredNorm().transpose().array() + 1.0).sqrt();
    bool improved = false;
    for (int attempt = 0; attempt < 8 && !improved; ++attempt) {
      Eigen::MatrixXd a(rows + cols, cols);
      a.topRows(rows) = jac;
      a.bottomRows(cols) = (std::sqrt(lambda) * scale).asDiagonal();
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows + cols);
      rhs.head(rows) = -r;
      const Eigen::VectorXd step = a.colPivHouseholderQr().solve(rhs);
      PrimDecomp trial = dec;
      trial.e0 = dec.e0 * su2_exp(step[0], step[1], step[2]);
      for (int i = 0; i < d; ++i) {
        const Complex delta(step[3 + 2 * i], step[4 + 2 * i]);
        Complex x0 = vs[i].first + delta * ws[i].first;
        Complex x1 = vs[i].second + delta * ws[i].second;
        const double n = std::sqrt(std::norm(x0) + std::norm(x1));
        trial.projs[i] = outer(x0 / n, x1 / n, x0 / n, x1 / n);
      }
      Eigen::VectorXd tr;
      const double terr = mismatch(dense_rebuild(trial.e0, trial.projs), target, tr);
      if (tr.norm() < r.norm()) {
        dec = std::move(trial);
        r = std::move(tr);
        err = terr;
        lambda = std::max(lambda / 10, 1e-15);
        improved = true;
      } else {
        lambda *= 10;
      }
    }
    if (!improved) break;
  }
  return err;
}

}  // namespace

void validate(const UnitarySeq& seq, double tol) {
  if (seq.mats.empty()) throw ShapeError("unitary sequence is empty");
  for (std::size_t i = 0; i < seq.mats.size(); ++i) {
    const Mat2c& u = seq.mats[i];
    const double unit = frobenius(adjoint(u) * u - Mat2c::identity());
    const double d = std::abs(det(u) - 1.0);
    if (unit > tol) throw NotUnitary(i, "||U^dagger U - I|| = " + std::to_string(unit));
    if (d > tol) throw NotUnitary(i, "|det U - 1| = " + std::to_string(d));
  }
  if (seq.word) {
    if (static_cast<int>(seq.word->size()) != seq.slots())
      throw ShapeError("assignment word has length " + std::to_string(seq.word->size()) + " but the sequence has " +
                       std::to_string(seq.slots()) + " signal slots");
    for (char c : *seq.word)
      if (c != 'a' && c != 'b') throw ShapeError(std::string("assignment word contains '") + c + "'");
  }
}

MatLaurent1c primitive(const Mat2c& proj) {
  MatLaurent1c f;
  f.add_term({1}, proj);
  f.add_term({-1}, Mat2c::identity() - proj);
  return f;
}

MatLaurent1c primitive_inverse(const Mat2c& proj) {
  MatLaurent1c f;
  f.add_term({-1}, proj);
  f.add_term({1}, Mat2c::identity() - proj);
  return f;
}

MatLaurent1c signal_matrix() {
  MatLaurent1c f;
  f.add_term({1}, Mat2c::diag(1.0, 0.0));
  f.add_term({-1}, Mat2c::diag(0.0, 1.0));
  return f;
}

MatLaurent1c build_product(const UnitarySeq& seq) {
  validate(seq);
  auto f = MatLaurent1c::constant(seq.mats.front());
  for (std::size_t i = 1; i < seq.mats.size(); ++i) f = right_multiply(right_multiply_signal(f, 0), seq.mats[i]);
  return f;
}

Mat2c evaluate_chain(const UnitarySeq& seq, Complex t) {
  Mat2c m = seq.mats.front();
  const Mat2c d = Mat2c::diag(t, 1.0 / t);
  for (std::size_t i = 1; i < seq.mats.size(); ++i) m = m * d * seq.mats[i];
  return m;
}

std::string UnivariateReport::first_failure() const {
  if (!degree_ok) return "property_1";
  if (!unitary_ok) return "property_2";
  if (!parity_ok) return "property_3";
  return "";
}

UnivariateReport validate_univariate(const MatLaurent1c& f, int d, double tol) {
  UnivariateReport r;
  r.claimed_degree = d;
  r.degree = f.degree();
  r.degree_ok = r.degree <= d;
  r.parity_ok = has_parity_of(f, 0, d);

  std::vector<Complex> points;
  const int equispaced = 2 * std::max(r.degree, d) + 5;
  for (int k = 0; k < equispaced; ++k) points.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / equispaced));
  Rng rng(0x5eed'0001);
  for (int k = 0; k < 16; ++k) points.push_back(random_phase(rng));

  for (Complex t : points) {
    const Mat2c m = evaluate(f, std::array{t});
    r.unitarity_residual = std::max(r.unitarity_residual, frobenius(adjoint(m) * m - Mat2c::identity()));
    r.det_residual = std::max(r.det_residual, std::abs(det(m) - 1.0));
  }
  r.samples = static_cast<int>(points.size());
  r.unitary_ok = r.unitarity_residual <= tol && r.det_residual <= tol;
  return r;
}

Mat2c leading_projector(const Mat2c& leading) {
  const Mat2c h = adjoint(leading) * leading;
  return h * Complex(1.0 / trace(h).real());
}

namespace {

struct Peel {
  PrimDecomp dec;
  int first_bad = 0;
  double first_bad_residual = 0;
};

// Peels `split` factors from the right and the rest from the left.
Peel peel(const MatLaurent1c& f, int split, const HaahOptions& opts) {
  std::deque<Mat2c> right, left;
  MatLaurent1c current = f;
  int first_bad = 0;
  double first_bad_residual = 0;
  for (int step = 1; current.degree() > 0; ++step) {
    const int d = current.degree();
    const bool from_right = step <= split;
    // Right: C_d = G P, C_-d = G' (I - P). Left: C_d = Q G, C_-d = (I - Q) G'.
    // Read the projector off the better conditioned end.
    const Mat2c lead = current.coeff({d});
    const Mat2c trail = current.coeff({-d});
    const bool use_lead = frobenius(lead) >= frobenius(trail);
    const Mat2c end = use_lead ? lead : trail;
    const Mat2c h = from_right ? adjoint(end) * end : end * adjoint(end);
    const double tr = trace(h).real();
    if (std::sqrt(tr) <= kTruncTol)
      throw DecompositionError(step, "extremal coefficients of t^" + std::to_string(d) + " are negligible");
    // For rank-one extremal coefficients this is exactly C^dagger C / Tr; the
    // eigenprojector keeps E_P unitary when the input is only nearly unitary.
    const Mat2c top = top_eigenprojector(h * Complex(1.0 / tr));
    const Mat2c p = use_lead ? top : Mat2c::identity() - top;
    MatLaurent1c next = from_right ? current * primitive_inverse(p) : primitive_inverse(p) * current;

    typename MatLaurent1c::Terms kept;
    double residual = 0;
    for (const auto& [e, c] : next.terms()) {
      if (std::abs(e[0]) >= d)
        residual = std::max(residual, frobenius(c));
      else
        kept.emplace(e, c);
    }
    const std::string what = "degree did not decrease below " + std::to_string(d) + " (residual ";
    if (residual > opts.abort_tol) throw DecompositionError(step, what + std::to_string(residual) + ")");
    if (residual > opts.peel_tol && first_bad == 0) {
      first_bad = step;
      first_bad_residual = residual;
    }
    current = MatLaurent1c(std::move(kept));
    if (from_right)
      right.push_front(p);
    else
      left.push_back(p);
  }
  // E_Q(t) e0 = e0 E_{e0^dagger Q e0}(t) moves the left factors inside.
  Peel out;
  PrimDecomp& dec = out.dec;
  dec.e0 = current.coeff({0});
  const Mat2c u = nearest_su2(dec.e0);
  if (!left.empty()) dec.e0 = u;
  for (const Mat2c& q : left) dec.projs.push_back(adjoint(u) * q * u);
  dec.projs.insert(dec.projs.end(), right.begin(), right.end());
  dec.residual = max_coeff_distance(rebuild(dec), f);
  out.first_bad = first_bad;
  out.first_bad_residual = first_bad_residual;
  return out;
}

}  // namespace

PrimDecomp haah_decompose(const MatLaurent1c& f, const HaahOptions& opts) {
  if (f.is_zero()) throw DecompositionError(1, "zero polynomial");
  if (f.degree() > opts.max_degree)
    throw DecompositionError(1, "degree " + std::to_string(f.degree()) + " exceeds the float decomposition cap of " +
                                    std::to_string(opts.max_degree));
  // Rounding in the input is amplified at every step by the ratio of inner to
  // extremal coefficient sizes. Peeling from both ends shortens each chain of
  // amplification; splits are tried outward from the middle.
  const int total = f.degree();
  std::vector<int> splits;
  for (int k = 0; k <= total; ++k) {
    const int lo = (total + 1) / 2 - k;
    const int hi = (total + 1) / 2 + k;
    if (lo >= 0) splits.push_back(lo);
    if (k > 0 && hi <= total) splits.push_back(hi);
  }
  std::optional<Peel> best;
  std::optional<DecompositionError> failure;
  int attempts = 0;
  for (int split : splits) {
    if (attempts == opts.max_splits) break;
    ++attempts;
    Peel p;
    try {
      p = peel(f, split, opts);
    } catch (const DecompositionError& e) {
      if (!failure) failure = e;
      continue;
    }
    if (opts.refine && p.dec.residual > opts.refine_above) {
      PrimDecomp polished = p.dec;
      polished.e0 = nearest_su2(polished.e0);
      polished.residual = refine_decomposition(polished, f, opts);
      if (polished.residual < p.dec.residual) p.dec = std::move(polished);
    }
    if (!best || p.dec.residual < best->dec.residual) best = std::move(p);
    if (best->dec.residual <= opts.accept_tol) break;
  }
  if (!best) throw *failure;
  PrimDecomp dec = std::move(best->dec);
  if (dec.residual > opts.peel_tol) {
    const int step = best->first_bad == 0 ? static_cast<int>(dec.projs.size()) : best->first_bad;
    throw DecompositionError(step, "rebuild error " + std::to_string(dec.residual) + " after refinement (peel residual " +
                                       std::to_string(best->first_bad_residual) + ")");
  }
  return dec;
}

MatLaurent1c rebuild(const PrimDecomp& dec) {
  auto f = MatLaurent1c::constant(dec.e0);
  for (const Mat2c& p : dec.projs) f = f * primitive(p);
  return f;
}

UnitarySeq to_unitary_sequence(const PrimDecomp& dec, int target_slots) {
  const int m = static_cast<int>(dec.projs.size());
  if (target_slots < 0) target_slots = m;
  if (target_slots < m || (target_slots - m) % 2 != 0)
    throw ShapeError("cannot spread " + std::to_string(m) + " primitive factors over " + std::to_string(target_slots) +
                     " signal slots");
  // E_P(t) = V diag(t, 1/t) V^dagger with V e_1 spanning P.
  std::vector<Mat2c> vs;
  for (const Mat2c& p : dec.projs) {
    const auto [v0, v1] = projector_vector(p);
    vs.push_back(su2_with_first_column(v0, v1));
  }
  UnitarySeq seq;
  if (m == 0) {
    seq.mats.push_back(dec.e0);
  } else {
    seq.mats.push_back(dec.e0 * vs.front());
    for (int i = 0; i + 1 < m; ++i) seq.mats.push_back(adjoint(vs[i]) * vs[i + 1]);
    seq.mats.push_back(adjoint(vs.back()));
  }
  for (int k = m; k < target_slots; k += 2) {
    seq.mats.push_back(kPadGate);
    seq.mats.push_back(adjoint(kPadGate));
  }
  return seq;
}

XRotationReport build_xrotation_product(const std::vector<double>& phis, double tol) {
  if (phis.empty()) throw ShapeError("at least one phase is required");
  UnitarySeq seq;
  for (double phi : phis) seq.mats.push_back(xrotation(phi));

  XRotationReport r;
  r.degree = static_cast<int>(phis.size()) - 1;
  r.product = build_product(seq);
  r.p = entry(r.product, 0, 0);
  r.q = entry(r.product, 0, 1);
  const double sign_d = (r.degree % 2 == 0) ? 1.0 : -1.0;

  const double structure = std::max(max_coeff_distance(entry(r.product, 1, 0), -conj_coeffs(reflect(r.q))),
                                    max_coeff_distance(entry(r.product, 1, 1), conj_coeffs(reflect(r.p))));
  r.entry_structure_ok = structure <= tol;

  const auto swapped = left_multiply(kPauliX, right_multiply(r.product, kPauliX));
  const double reflection = max_coeff_distance(reflect(r.product), swapped);
  r.reflection_ok = reflection <= tol;

  r.parity_ok = has_parity_of(r.p, 0, r.degree) && has_parity_of(r.q, 0, r.degree);
  r.residual = std::max(structure, reflection);

  r.reciprocity_residual_p = max_coeff_distance(reflect(r.p), scale(r.p, Complex(sign_d)));
  r.reciprocity_residual_q = max_coeff_distance(reflect(r.q), scale(r.q, Complex(-sign_d)));
  return r;
}

}  // namespace qspdc
