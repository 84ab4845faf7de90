#pragma once

#include <vector>

#include "nlswap/box.hpp"
#include "nlswap/scalar.hpp"

namespace nlswap {

/// Linear functional sum_x C_x E_x over full correlators, one coefficient per
/// input word.
struct BellFunctional {
  int parties = 0;
  std::vector<Scalar> coeffs;

  friend bool operator==(const BellFunctional&, const BellFunctional&) = default;
};

/// Local, quantum (Tsirelson) and algebraic bounds of the GSI functional.
struct BoundTriple {
  Scalar local;
  Scalar quantum;
  Scalar algebraic;
};

struct Classification {
  Scalar gsi_value;
  bool exceeds_local = false;
  bool exceeds_quantum = false;
};

/// E_x = sum_a (-1)^{|a|} P(a|x).
Scalar correlator(const BoxTable& box, Word inputs);

/// Generalized Svetlichny coefficients: +1 when (sum x_i mod 4) is 0 or 1,
/// -1 when it is 2 or 3. n = 2 gives CHSH, n = 3 Svetlichny.
BellFunctional gsi_coefficients(int parties);

/// Throws BoxError on arity mismatch.
Scalar evaluate(const BellFunctional& functional, const BoxTable& box);

/// P(11|00) + P(00|10) + P(00|01) - P(00|11) on a bipartite box.
Scalar ch_evaluate(const BoxTable& box);

/// (2^{n-1}, 2^{n-1} sqrt2, 2^n).
BoundTriple bounds(int parties);

/// CH analogues for bipartite boxes: (1, 1/2 + 1/sqrt2, 3/2).
BoundTriple ch_bounds();

/// Bound exceedance of |GSI|. Never a locality certificate.
Classification classify(const BoxTable& box);

}  // namespace nlswap
