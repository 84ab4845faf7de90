#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nlswap/scalar.hpp"

namespace nlswap {

/// Dense tables above this many parties are refused (4^10 entries).
inline constexpr int kMaxParties = 10;

/// Bit word over parties; party i (zero-based) is bit i.
using Word = std::uint32_t;

inline int bit_of(Word word, int party) { return static_cast<int>((word >> party) & 1U); }
inline int parity(Word word) { return __builtin_parity(word); }
inline int popcount(Word word) { return __builtin_popcount(word); }

/// Invalid arguments to a box operation (bad arity, kind, index, weights).
class BoxError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A marginal depends on a discarded party's input.
class SignalingError : public BoxError {
 public:
  SignalingError(int party, const std::string& what) : BoxError(what), party_(party) {}
  int party() const { return party_; }

 private:
  int party_;
};

/// Outcome of the exact validity checks on a table.
struct ValidationReport {
  bool normalized = true;
  bool nonnegative = true;
  /// Entry i is false when party i can signal through its input.
  std::vector<bool> nonsignaling;

  bool ok() const;
  /// One line per failed check; empty when ok().
  std::vector<std::string> failures() const;
};

/// Joint distribution P(outputs | inputs) of an n-party box with binary
/// inputs and outputs.
///
/// Entry (x, a) sits at index `(x << n) | a`. A table is either a checked
/// distribution (normalized, nonnegative, nonsignaling; enforced on
/// construction) or an explicitly flagged quasi table that holds arbitrary
/// exact values.
class BoxTable {
 public:
  enum class Kind { distribution, quasi };

  BoxTable() : BoxTable(0, std::vector<Scalar>{Scalar(1)}, Kind::distribution) {}

  /// Throws BoxError when `kind == distribution` and validation fails.
  BoxTable(int parties, std::vector<Scalar> probs, Kind kind = Kind::distribution);

  /// Zero-filled quasi table.
  static BoxTable zeros(int parties);
  /// Distribution built by a validity-preserving operation; not re-checked.
  static BoxTable trusted(int parties, std::vector<Scalar> probs);

  int parties() const { return parties_; }
  Word words() const { return Word{1} << parties_; }
  bool quasi() const { return kind_ == Kind::quasi; }

  const Scalar& at(Word inputs, Word outputs) const { return probs_[index(inputs, outputs)]; }
  std::span<const Scalar> entries() const { return probs_; }
  std::size_t index(Word inputs, Word outputs) const {
    return (static_cast<std::size_t>(inputs) << parties_) | outputs;
  }

  /// Same entries, re-checked as a distribution.
  BoxTable as_distribution() const { return BoxTable(parties_, probs_, Kind::distribution); }
  BoxTable as_quasi() const { return BoxTable(parties_, probs_, Kind::quasi); }

  /// Entrywise scaling into a quasi table.
  BoxTable scaled(const Scalar& factor) const;

  friend bool operator==(const BoxTable& lhs, const BoxTable& rhs) {
    return lhs.parties_ == rhs.parties_ && lhs.probs_ == rhs.probs_;
  }

 private:
  int parties_ = 0;
  std::vector<Scalar> probs_;
  Kind kind_ = Kind::distribution;
};

enum class BoxKind { pr, anti_pr, mixed, gsb, sb, isotropic, failure };

std::string to_string(BoxKind kind);
BoxKind parse_box_kind(const std::string& name);

/// Named constructor for every box family; `xi` is required iff
/// `kind == isotropic` and must lie in [-1, 1].
BoxTable make_box(BoxKind kind, int parties, std::optional<Scalar> xi = std::nullopt);

BoxTable pr_box();
BoxTable anti_pr_box();
BoxTable mixed_box(int parties);
/// Extremal box with parity(outputs) = XOR over pairs j<k of x_j x_k.
BoxTable gsb_box(int parties);
BoxTable sb_box();
/// xi * GSB_n + (1 - xi) * uniform.
BoxTable isotropic_box(int parties, const Scalar& xi);
/// (3 * uniform - GSB_n) / 2.
BoxTable failure_box(int parties);

/// Local deterministic strategy for one party: output = f(input), one of
/// the four functions 0, 1, x, 1-x.
enum class LocalResponse { zero, one, copy, flip };
BoxTable deterministic_box(std::span<const LocalResponse> responses);

/// Product box; `a` occupies the low party positions.
BoxTable tensor(const BoxTable& a, const BoxTable& b);

/// Marginal over `keep` (in the given order). Discarded parties get input 0
/// unless listed in `fixed_inputs`; every other input of the discarded
/// parties is checked to give the same marginal, and a SignalingError names
/// the first offending party otherwise.
BoxTable marginalize(const BoxTable& box, std::span<const int> keep,
                     const std::map<int, int>& fixed_inputs = {});

/// Marginal averaged uniformly over the discarded parties' inputs; no
/// nonsignaling check, result is quasi if the input is.
BoxTable marginalize_averaged(const BoxTable& box, std::span<const int> keep);

/// Reorders parties: new party k is old party `order[k]`.
BoxTable permute(const BoxTable& box, std::span<const int> order);

/// Affine combination of same-arity tables. Weights must sum to 1. Negative
/// weights are allowed; the result must be a valid distribution unless
/// `kind == quasi`.
BoxTable mix(std::span<const std::pair<Scalar, BoxTable>> terms,
             BoxTable::Kind kind = BoxTable::Kind::distribution);

/// Wires parties i and j into one party: the common input feeds both and
/// the output is their XOR. The merged party takes position min(i, j).
BoxTable merge_parties(const BoxTable& box, int i, int j);

ValidationReport validate(const BoxTable& box);

}  // namespace nlswap
