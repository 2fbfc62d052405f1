#include "qspdc/f22.hpp"

#include <cmath>

#include "qspdc/alt_bi.hpp"
#include "qspdc/error.hpp"

namespace qspdc {

double ScaleFactor::value() const { return num.get_d() * std::sqrt(radicand.get_d()); }

namespace {

GaussRational q(long re_num, long re_den, long im_num, long im_den) {
  mpq_class re(re_num, re_den), im(im_num, im_den);
  re.canonicalize();
  im.canonicalize();
  return {re, im};
}

void add(ScalarLaurent2q::Terms& terms, int i, int j, const GaussRational& c) {
  auto [it, inserted] = terms.try_emplace(Exponent<2>{i, j}, c);
  if (!inserted) it->second += c;
}

}  // namespace

ExactCounterexample counterexample_f22() {
  const GaussRational A(1), F(1);
  const GaussRational B = -q(122, 37, 8, 37);
  const GaussRational C = q(114, 37, 56, 37);
  const GaussRational D = q(362, 111, -248, 111);
  const GaussRational E = q(692, 111, -719, 222);
  const GaussRational G = -q(122, 37, 66, 37);
  const GaussRational H = q(56, 37, 114, 37);
  const GaussRational I = q(362, 111, -418, 111);

  // P = (A a^2 + B + C a^-2) b^2 + D (a^2 + a^-2) + E + (A a^-2 + B + C a^2) b^-2
  ScalarLaurent2q::Terms p;
  add(p, 2, 2, A), add(p, 0, 2, B), add(p, -2, 2, C);
  add(p, 2, 0, D), add(p, 0, 0, E), add(p, -2, 0, D);
  add(p, -2, -2, A), add(p, 0, -2, B), add(p, 2, -2, C);
  // Q = (F a^2 + G + H a^-2) b^2 + I (a^2 - a^-2) - (F a^-2 + G + H a^2) b^-2
  ScalarLaurent2q::Terms qq;
  add(qq, 2, 2, F), add(qq, 0, 2, G), add(qq, -2, 2, H);
  add(qq, 2, 0, I), add(qq, -2, 0, -I);
  add(qq, -2, -2, -F), add(qq, 0, -2, -G), add(qq, 2, -2, -H);

  ExactCounterexample ce;
  ce.p = ScalarLaurent2q(std::move(p));
  ce.q = ScalarLaurent2q(std::move(qq));
  ce.rescaled = su2_form(ce.p, ce.q);
  ce.scale = {mpq_class(6, 25), mpq_class(37, 493)};
  return ce;
}

MatLaurent2c f22() {
  const ExactCounterexample ce = counterexample_f22();
  return scale(to_float(ce.rescaled), Complex(ce.scale.value()));
}

std::array<Mat2q, 2> f22_expected_corner_diagonals() {
  const mpq_class u(72, 10625), l(72, 3625);
  return {Mat2q::diag(GaussRational(u, u), GaussRational(u, -u)), Mat2q::diag(GaussRational(l, l), GaussRational(l, -l))};
}

F22Report check_f22_identities(const ExactCounterexample& ce) {
  F22Report r;
  const GaussRational inv_s2(1 / ce.scale.squared());

  r.symmetry_ok = reflect(ce.p) == ce.p && reflect(ce.q) == -ce.q;
  if (!r.symmetry_ok) r.failures.push_back("symmetry: P(1/a,1/b) = P(a,b), Q(1/a,1/b) = -Q(a,b)");

  const auto one = ScalarLaurent2q::constant(inv_s2);
  const bool conj_form = ce.p * conj_coeffs(ce.p) - ce.q * conj_coeffs(ce.q) == one;
  const auto rr = ce.rescaled * adjoint(ce.rescaled);
  const bool matrix_form = rr == MatLaurent2q::constant(Mat2q::identity() * inv_s2);
  r.unitarity_ok = conj_form && matrix_form;
  if (!r.unitarity_ok) r.failures.push_back("unitarity: P P* - Q Q* = 1/s^2 and R R^dagger = I/s^2");

  const auto det_poly = entry(ce.rescaled, 0, 0) * entry(ce.rescaled, 1, 1) -
                        entry(ce.rescaled, 0, 1) * entry(ce.rescaled, 1, 0);
  r.determinant_ok = det_poly == one;
  if (!r.determinant_ok) r.failures.push_back("determinant: det R = 1/s^2");

  r.magnitude_ok = ce.p.coeff({2, 2}).norm() == ce.q.coeff({2, 2}).norm();
  if (!r.magnitude_ok) r.failures.push_back("magnitude: |A|^2 = |F|^2");

  const auto corners = corner_products(ce.rescaled);
  const auto expected = f22_expected_corner_diagonals();
  const GaussRational s2(ce.scale.squared());
  const Mat2q got[2] = {corners.upper * s2, corners.lower * s2};
  r.corners_ok = true;
  for (int k = 0; k < 2; ++k)
    for (int d : {0, 3})
      if (!(got[k].a[d] == expected[k].a[d])) r.corners_ok = false;
  if (!r.corners_ok) r.failures.push_back("corner products: diagonals 72/10625 (1 +- i) and 72/3625 (1 +- i)");
  return r;
}

F22Report verify_f22_identities() {
  F22Report r = check_f22_identities(counterexample_f22());
  if (!r.pass()) {
    std::string msg = "counterexample data fails:";
    for (const auto& f : r.failures) msg += " [" + f + "]";
    throw IdentityFailure(msg);
  }
  return r;
}

}  // namespace qspdc
