#include "nlswap/functional.hpp"

namespace nlswap {

Scalar correlator(const BoxTable& box, Word inputs) {
  Scalar e;
  for (Word a = 0; a < box.words(); ++a) {
    const Scalar& p = box.at(inputs, a);
    if (p.is_zero()) continue;
    if (parity(a)) e -= p;
    else e += p;
  }
  return e;
}

BellFunctional gsi_coefficients(int parties) {
  if (parties < 2) throw BoxError("GSI needs at least 2 parties");
  BellFunctional f{parties, {}};
  const Word words = Word{1} << parties;
  f.coeffs.reserve(words);
  // sqrt2 cos(pi/2 (k mod 4) - pi/4) for k mod 4 = 0,1,2,3
  static constexpr int kResidueSign[4] = {+1, +1, -1, -1};
  for (Word x = 0; x < words; ++x) f.coeffs.emplace_back(kResidueSign[popcount(x) % 4]);
  return f;
}

Scalar evaluate(const BellFunctional& functional, const BoxTable& box) {
  if (functional.parties != box.parties()) {
    throw BoxError("functional over " + std::to_string(functional.parties) + " parties applied to a " +
                   std::to_string(box.parties()) + "-party box");
  }
  Scalar total;
  for (Word x = 0; x < box.words(); ++x) {
    const Scalar& c = functional.coeffs[x];
    if (!c.is_zero()) total += c * correlator(box, x);
  }
  return total;
}

Scalar ch_evaluate(const BoxTable& box) {
  if (box.parties() != 2) throw BoxError("CH functional needs a bipartite box");
  // word layout: party 1 is bit 0
  return box.at(0b00, 0b11) + box.at(0b01, 0b00) + box.at(0b10, 0b00) - box.at(0b11, 0b00);
}

BoundTriple bounds(int parties) {
  if (parties < 2) throw BoxError("GSI bounds need at least 2 parties");
  const Scalar local = Scalar::pow2(parties - 1);
  return {local, local * Scalar::sqrt2(), Scalar::pow2(parties)};
}

BoundTriple ch_bounds() {
  return {Scalar(1), Scalar::rational(1, 2) + Scalar::inv_sqrt2(), Scalar::rational(3, 2)};
}

Classification classify(const BoxTable& box) {
  const BoundTriple b = bounds(box.parties());
  Classification c;
  c.gsi_value = evaluate(gsi_coefficients(box.parties()), box);
  const Scalar magnitude = c.gsi_value.abs();
  c.exceeds_local = magnitude > b.local;
  c.exceeds_quantum = magnitude > b.quantum;
  return c;
}

}  // namespace nlswap
