#include "qspdc/scalar.hpp"

#include <cctype>

#include "qspdc/error.hpp"

namespace qspdc {

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  const mpq_class n = o.norm();
  if (sgn(n) == 0) throw DomainError("division by zero Gaussian rational");
  mpq_class r = (re * o.re + im * o.im) / n;
  im = (im * o.re - re * o.im) / n;
  re = std::move(r);
  return *this;
}

GaussRational conj(const GaussRational& z) { return {z.re, -z.im}; }

Complex to_complex(const GaussRational& z) { return {z.re.get_d(), z.im.get_d()}; }

std::string rational_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  if (s.empty()) throw FormatError("empty rational literal");
  try {
    if (const auto dot = s.find('.'); dot != std::string::npos) {
      if (s.find_first_of("eE/") != std::string::npos) throw FormatError("unsupported rational literal '" + s + "'");
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      const std::size_t decimals = s.size() - dot - 1;
      mpz_class den = 1;
      for (std::size_t i = 0; i < decimals; ++i) den *= 10;
      mpq_class q(mpz_class(digits, 10), den);
      q.canonicalize();
      return q;
    }
    mpq_class q(s, 10);
    if (q.get_den() == 0) throw FormatError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw FormatError("malformed rational literal '" + s + "'");
  }
}

std::string to_string(const GaussRational& z) {
  if (sgn(z.im) == 0) return rational_string(z.re);
  const std::string im = rational_string(abs(z.im)) + "i";
  if (sgn(z.re) == 0) return (sgn(z.im) < 0 ? "-" : "") + im;
  return rational_string(z.re) + (sgn(z.im) < 0 ? " - " : " + ") + im;
}

}  // namespace qspdc
