#include "qspdc/family.hpp"

#include <Eigen/Dense>
#include <future>
#include <optional>

#include "qspdc/error.hpp"
#include "qspdc/f22.hpp"

namespace qspdc {

namespace {

struct Raw {
  Complex A, B, C, D, F, G, H, I, gamma0, gamma1;
  double r, s, t, u;
};

Raw raw_coefficients(Complex alpha0, double k, Complex alpha1) {
  Raw c;
  c.A = c.F = 1.0;
  c.gamma0 = Complex(0, k) * alpha0;
  c.gamma1 = alpha1 / Complex(0, k);
  c.B = -(alpha0 + alpha1);
  c.C = alpha0 * alpha1;
  c.D = -(c.gamma0 + c.gamma1);
  c.G = -(alpha0 + std::conj(alpha1));
  c.H = alpha0 * std::conj(alpha1);
  c.I = -(c.gamma0 + std::conj(c.gamma1));
  // x y* + y x* = 2 Re(x y*)
  auto h = [](Complex x, Complex y) { return 2 * (x * std::conj(y)).real(); };
  c.r = h(c.G, c.I) - h(c.B, c.D);
  c.s = -(h(c.G, c.I) + h(c.B, c.D));
  c.t = -(h(c.A, c.B) + h(c.B, c.C) + h(c.F, c.G) + h(c.G, c.H));
  c.u = h(c.I, c.H) - h(c.F, c.I) - h(c.A, c.D) - h(c.C, c.D);
  return c;
}

std::array<double, 2> residual(Complex alpha0, double k, const Eigen::Vector2d& v) {
  const auto xy = family_equations(alpha0, k, {v[0], v[1]});
  return {xy[0].imag(), xy[1].imag()};
}

std::optional<Eigen::Vector2d> newton(Complex alpha0, double k, Eigen::Vector2d v, int max_iter) {
  auto norm_at = [&](const Eigen::Vector2d& p) {
    const auto r = residual(alpha0, k, p);
    return std::hypot(r[0], r[1]);
  };
  double nr = norm_at(v);
  for (int it = 0; it < max_iter && nr > 0; ++it) {
    const auto r = residual(alpha0, k, v);
    Eigen::Matrix2d jac;
    for (int j = 0; j < 2; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(v[j]));
      Eigen::Vector2d vp = v, vm = v;
      vp[j] += h;
      vm[j] -= h;
      const auto rp = residual(alpha0, k, vp), rm = residual(alpha0, k, vm);
      jac(0, j) = (rp[0] - rm[0]) / (2 * h);
      jac(1, j) = (rp[1] - rm[1]) / (2 * h);
    }
    const auto lu = jac.fullPivLu();
    if (!lu.isInvertible()) return std::nullopt;
    const Eigen::Vector2d step = lu.solve(-Eigen::Vector2d(r[0], r[1]));
    double lambda = 1.0;
    while (lambda > 1e-9 && norm_at(v + lambda * step) >= nr) lambda /= 2;
    if (lambda <= 1e-9) break;
    v += lambda * step;
    nr = norm_at(v);
    if ((lambda * step).norm() <= 1e-15 * (1 + v.norm())) break;
  }
  if (!std::isfinite(nr) || nr > 1e-8 * std::pow(std::max(1.0, v.norm()), 6)) return std::nullopt;
  return v;
}

}  // namespace

std::array<Complex, 2> family_equations(Complex alpha0, double k, Complex alpha1) {
  const Raw c = raw_coefficients(alpha0, k, alpha1);
  const Complex x = (c.D * std::conj(c.A) - c.A * std::conj(c.D)) * (c.r * c.C - c.s * c.A) -
                    (c.r * c.D - c.t * c.A) * (std::conj(c.A) * c.C - std::conj(c.C) * c.A);
  const Complex y = (c.r * c.D - c.t * c.A) * (c.B - std::conj(c.B)) - (c.r * c.B - c.u * c.A) * (c.D - std::conj(c.D));
  return {x, y};
}

CounterexampleFamily family_member(Complex alpha0, double k, Complex alpha1) {
  if (alpha0 == 0.0) throw DomainError("alpha0 must be nonzero");
  if (k == 0.0) throw DomainError("k must be nonzero");
  const Raw c = raw_coefficients(alpha0, k, alpha1);

  // Lines 2 Re(E X*) = rhs; intersect the best-conditioned pair, check all four.
  const std::array<std::pair<Complex, double>, 4> lines{{{c.A, c.r}, {c.C, c.s}, {c.D, c.t}, {c.B, c.u}}};
  double best = -1;
  Complex e = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      Eigen::Matrix2d m;
      m << 2 * lines[i].first.real(), 2 * lines[i].first.imag(), 2 * lines[j].first.real(), 2 * lines[j].first.imag();
      const double d = std::abs(m.determinant()) / (m.row(0).norm() * m.row(1).norm());
      if (d > best) {
        best = d;
        const Eigen::Vector2d sol = m.fullPivLu().solve(Eigen::Vector2d(lines[i].second, lines[j].second));
        e = {sol[0], sol[1]};
      }
    }
  }

  CounterexampleFamily fam;
  fam.alpha0 = alpha0;
  fam.k = k;
  fam.alpha1 = alpha1;
  fam.gamma0 = c.gamma0;
  fam.gamma1 = c.gamma1;
  double scale_ref = 1;
  for (const auto& [x, rhs] : lines) {
    fam.line_residual = std::max(fam.line_residual, std::abs(2 * (e * std::conj(x)).real() - rhs));
    scale_ref = std::max(scale_ref, std::abs(rhs));
  }
  fam.concurrent = best > 1e-12 && fam.line_residual <= 1e-10 * scale_ref;
  const auto xy = family_equations(alpha0, k, alpha1);
  fam.equation_residual = std::max(std::abs(xy[0]), std::abs(xy[1]));

  const double total = 2 * (std::norm(c.A) + std::norm(c.B) + std::norm(c.C) + std::norm(c.D) + std::norm(c.F) +
                            std::norm(c.G) + std::norm(c.H) + std::norm(c.I)) +
                       std::norm(e);
  fam.scale = 1 / std::sqrt(total);
  const double s = fam.scale;
  fam.A = s * c.A, fam.B = s * c.B, fam.C = s * c.C, fam.D = s * c.D, fam.E = s * e;
  fam.F = s * c.F, fam.G = s * c.G, fam.H = s * c.H, fam.I = s * c.I;
  return fam;
}

std::vector<CounterexampleFamily> solve_family(Complex alpha0, double k, const FamilyOptions& opts) {
  if (alpha0 == 0.0) throw DomainError("alpha0 must be nonzero");
  if (k == 0.0) throw DomainError("k must be nonzero");
  const int n = opts.grid;
  std::vector<std::future<std::vector<std::optional<Eigen::Vector2d>>>> rows;
  for (int i = 0; i < n; ++i) {
    rows.push_back(std::async(std::launch::async, [&, i] {
      std::vector<std::optional<Eigen::Vector2d>> out;
      for (int j = 0; j < n; ++j) {
        const double x = n == 1 ? 0 : -opts.box + 2 * opts.box * i / (n - 1);
        const double y = n == 1 ? 0 : -opts.box + 2 * opts.box * j / (n - 1);
        out.push_back(newton(alpha0, k, {x, y}, opts.max_iter));
      }
      return out;
    }));
  }
  std::vector<Eigen::Vector2d> roots;
  for (auto& row : rows) {
    for (const auto& v : row.get()) {
      if (!v) continue;
      const bool seen = std::any_of(roots.begin(), roots.end(), [&](const Eigen::Vector2d& r) {
        return (r - *v).norm() < opts.dedupe;
      });
      if (!seen) roots.push_back(*v);
    }
  }
  std::vector<CounterexampleFamily> out;
  for (const auto& v : roots) out.push_back(family_member(alpha0, k, {v[0], v[1]}));
  return out;
}

MatLaurent2c to_polynomial(const CounterexampleFamily& f) {
  ScalarLaurent2c::Terms p, q;
  auto put = [](ScalarLaurent2c::Terms& t, int i, int j, Complex c) { t[Exponent<2>{i, j}] += c; };
  put(p, 2, 2, f.A), put(p, 0, 2, f.B), put(p, -2, 2, f.C);
  put(p, 2, 0, f.D), put(p, 0, 0, f.E), put(p, -2, 0, f.D);
  put(p, -2, -2, f.A), put(p, 0, -2, f.B), put(p, 2, -2, f.C);
  put(q, 2, 2, f.F), put(q, 0, 2, f.G), put(q, -2, 2, f.H);
  put(q, 2, 0, f.I), put(q, -2, 0, -f.I);
  put(q, -2, -2, -f.F), put(q, 0, -2, -f.G), put(q, 2, -2, -f.H);
  return su2_form(ScalarLaurent2c(std::move(p)), ScalarLaurent2c(std::move(q)));
}

}  // namespace qspdc
