#include "qspdc/laurent.hpp"

namespace qspdc {

std::string to_string(Parity p) {
  switch (p) {
    case Parity::Even:
      return "even";
    case Parity::Odd:
      return "odd";
    case Parity::Mixed:
      return "mixed";
  }
  return "mixed";
}

int variable_count(const AnyMatLaurent& f) { return (f.index() < 2) ? 1 : 2; }

bool is_exact(const AnyMatLaurent& f) { return f.index() % 2 == 1; }

AnyMatLaurent multiply(const AnyMatLaurent& f, const AnyMatLaurent& g) {
  if (variable_count(f) != variable_count(g))
    throw BackendMismatch("cannot multiply polynomials in " + std::to_string(variable_count(f)) + " and " +
                          std::to_string(variable_count(g)) + " variables");
  if (is_exact(f) != is_exact(g))
    throw BackendMismatch(std::string("cannot multiply a ") + (is_exact(f) ? "exact" : "float") + " polynomial by a " +
                          (is_exact(g) ? "exact" : "float") + " one");
  return std::visit(
      [&](const auto& x) -> AnyMatLaurent {
        using T = std::decay_t<decltype(x)>;
        return multiply(x, std::get<T>(g));
      },
      f);
}

}  // namespace qspdc
