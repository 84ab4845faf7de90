#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlswap/box.hpp"
#include "nlswap/functional.hpp"

namespace nlswap {

/// How the success weights of a coupler are derived.
enum class CouplerForm {
  /// Success coefficients are the Walsh dual of the GSB correlator pattern,
  /// so product GSB inputs are swapped into a GSB output for every arity.
  swap,
  /// Success coefficients are the GSI coefficients themselves. Identical to
  /// `swap` for arity 2; for larger arities the output is not a GSB.
  gsi_correlator,
};

/// Linear quasi-effect consumed by a coupler: weight(b', b, y) is the
/// contribution of P(b|y) on the coupler's N subsystems to outcome b'.
///
/// Weights are uniform over inputs: weight(0,b,y) + weight(1,b,y) = 2^-N.
/// Success weights have the correlator form
///     weight(0, b, y) = (1 + 2 D_y (-1)^{|b|}) / (3 * 2^N)
/// where D is `success_functional()`. Some success weights are negative:
/// the effect is only meaningful where the resulting branches are valid.
class CouplerEffect {
 public:
  CouplerEffect(int arity, CouplerForm form);

  int arity() const { return arity_; }
  CouplerForm form() const { return form_; }
  const Scalar& weight(int outcome, Word outputs, Word inputs) const {
    return weights_[index(outcome, outputs, inputs)];
  }
  /// D: success probability is 1/3 + D.E / (3 * 2^{N-1}) on Bob's box.
  const BellFunctional& success_functional() const { return functional_; }

 private:
  std::size_t index(int outcome, Word outputs, Word inputs) const {
    return (static_cast<std::size_t>(outcome) << (2 * arity_)) | (static_cast<std::size_t>(inputs) << arity_) |
           outputs;
  }

  int arity_;
  CouplerForm form_;
  BellFunctional functional_;
  std::vector<Scalar> weights_;
};

/// D_y = 1/2 sum_s C_s (-1)^{y.s} with C the GSI coefficients. Equal to the
/// GSI coefficients for two parties.
BellFunctional swap_coefficients(int arity);

CouplerEffect build_coupler(int arity, CouplerForm form = CouplerForm::swap);

/// Probability of b' = 0 on Bob's N-party box, summed from the weights.
Scalar success_probability(const CouplerEffect& coupler, const BoxTable& bob_box);

/// True iff the success probability lies in [0, 1], i.e.
/// -2^{N-1} <= D.E <= 2^N.
bool is_allowed(const CouplerEffect& coupler, const BoxTable& bob_box);

struct BranchResult {
  int outcome = 0;
  Scalar probability;
  /// Conditional box over the surviving parties; empty when probability is 0.
  std::optional<BoxTable> box;
};

/// The coupler produced a table that is not a distribution.
class CouplerInvalid : public std::runtime_error {
 public:
  CouplerInvalid(int outcome, std::string reason, BoxTable table)
      : std::runtime_error("coupler invalid on this input: branch b'=" + std::to_string(outcome) + ": " + reason),
        outcome_(outcome),
        table_(std::move(table)) {}

  int outcome() const { return outcome_; }
  /// Offending unnormalized branch table.
  const BoxTable& table() const { return table_; }

 private:
  int outcome_;
  BoxTable table_;
};

/// Unnormalized branch tables T_{b'}(A|X) = sum_{y,b} weight(b', b, y) joint(A, b | X, y)
/// over the surviving parties (kept in their original order). No validity checks.
std::array<BoxTable, 2> branch_tables(const CouplerEffect& coupler, const BoxTable& joint,
                                      std::span<const int> consumed);

/// Applies the coupler to the `consumed` parties of `joint` (slot k of the
/// coupler is fed by party consumed[k]). Throws CouplerInvalid when a branch
/// has a negative entry, input-dependent mass or signals.
std::array<BranchResult, 2> apply_coupler(const CouplerEffect& coupler, const BoxTable& joint,
                                          std::span<const int> consumed);

/// Parties of `joint` that survive a coupler on `consumed`, in order.
std::vector<int> surviving_parties(int parties, std::span<const int> consumed);

}  // namespace nlswap
