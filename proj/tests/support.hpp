#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "qspdc/alt_bi.hpp"
#include "qspdc/qsp_uni.hpp"
#include "qspdc/random.hpp"

namespace qspdc::testing {

inline UnitarySeq random_sequence(Rng& rng, int slots) {
  UnitarySeq seq;
  for (int i = 0; i <= slots; ++i) seq.mats.push_back(random_su2(rng));
  return seq;
}

inline UnitarySeq random_sequence(Rng& rng, const std::string& word) {
  UnitarySeq seq = random_sequence(rng, static_cast<int>(word.size()));
  seq.word = word;
  return seq;
}

/// Dense oracle: Fourier coefficients of t -> F(t) recovered from 2D+1
/// equispaced samples of the chain, with D >= degree.
inline MatLaurent1c chain_coefficients(const UnitarySeq& seq, int D) {
  const int m = 2 * D + 1;
  MatLaurent1c::Terms terms;
  for (int k = 0; k < m; ++k) {
    const Complex t = std::polar(1.0, 2 * std::numbers::pi * k / m);
    const Mat2c v = evaluate_chain(seq, t);
    for (int e = -D; e <= D; ++e) terms[{e}] += v * (std::pow(t, -e) / double(m));
  }
  typename MatLaurent1c::Terms kept;
  for (auto& [e, c] : terms)
    if (frobenius(c) > 1e-12) kept.emplace(e, c);
  return MatLaurent1c(std::move(kept));
}

/// Rank-one projection polynomial U(b) K U(b)^dagger with U = E_{S_1}(b) ... E_{S_k}(b).
inline MatLaurent1c forward_projection(Rng& rng, int k) {
  MatLaurent1c u = identity_polynomial<1, Complex>();
  for (int i = 0; i < k; ++i) u = u * primitive(random_projector(rng));
  return u * MatLaurent1c::constant(random_projector(rng)) * adjoint(u);
}

inline MatLaurent1c projection_from(const EvenProjection& ep) {
  const Mat2c k{{ep.psi[0] * std::conj(ep.psi[0]), ep.psi[0] * std::conj(ep.psi[1]),
                 ep.psi[1] * std::conj(ep.psi[0]), ep.psi[1] * std::conj(ep.psi[1])}};
  return ep.u * MatLaurent1c::constant(k) * adjoint(ep.u);
}

}  // namespace qspdc::testing
