#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlswap/box.hpp"
#include "nlswap/coupler.hpp"
#include "nlswap/functional.hpp"

namespace nlswap {

struct BoxDecl {
  std::string name;
  BoxKind kind = BoxKind::mixed;
  int parties = 2;
  std::optional<Scalar> xi;
  /// One label per party, in party order.
  std::vector<std::string> labels;
};

struct CouplerStep {
  int arity = 2;
  /// Coupler slot k is fed by the party labelled consumed[k].
  std::vector<std::string> consumed;
  /// Outcome bit to condition on; unset keeps both branches selected.
  std::optional<int> condition;
};

/// Merges two box ends of one user: common input, XOR of outputs.
struct Wiring {
  std::string first;
  std::string second;
  std::string merged;
};

struct ScenarioSpec {
  std::string name = "scenario";
  std::vector<BoxDecl> boxes;
  std::vector<CouplerStep> couplers;
  std::vector<Wiring> wirings;
  /// Functional names evaluated on every final box: "gsi", "ch".
  std::vector<std::string> reports;
};

/// Spec is malformed or violates its invariants (unknown or reused labels,
/// table cap exceeded, ...).
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coupler produced an invalid branch somewhere in the outcome tree.
class ScenarioCouplerError : public std::runtime_error {
 public:
  ScenarioCouplerError(std::size_t step, std::vector<int> path, const std::string& detail);
  std::size_t step() const { return step_; }
  /// Outcome bits of the earlier couplers on the failing branch.
  const std::vector<int>& path() const { return path_; }

 private:
  std::size_t step_;
  std::vector<int> path_;
};

struct FunctionalValue {
  std::string name;
  Scalar value;
};

struct BranchRecord {
  std::vector<int> outcomes;
  Scalar probability;
  bool selected = true;
  /// Final box over ScenarioReport::labels; empty for zero-probability branches.
  std::optional<BoxTable> box;
  std::vector<FunctionalValue> functionals;
  std::optional<Classification> classification;
};

/// Allowed-region verdict of one coupler application.
struct AllowedFlag {
  std::size_t step = 0;
  std::vector<int> path;
  bool allowed = false;
  Scalar success_probability;
};

/// Branches sharing a label, e.g. "two successes".
struct BranchGroup {
  std::string name;
  Scalar probability;
  /// Common conditional box when every member carries the same box.
  std::optional<BoxTable> box;
  std::vector<std::vector<int>> members;
};

struct CrossCheck {
  std::string name;
  std::string expected;
  std::string computed;
  bool passed = false;
};

struct ScenarioReport {
  std::string name;
  std::vector<std::string> labels;
  std::vector<BranchRecord> branches;
  Scalar selected_probability;
  std::vector<AllowedFlag> allowed;
  std::vector<BranchGroup> groups;
  std::vector<CrossCheck> checks;

  bool all_checks_passed() const;
  const BranchRecord* find_branch(const std::vector<int>& outcomes) const;
};

/// Throws ScenarioError when a ScenarioSpec breaks its invariants.
void validate_spec(const ScenarioSpec& spec);

/// Runs every coupler on every outcome branch, then the wirings, and
/// reports each branch (ordered by outcome bits). Couplers act on the
/// smallest product of boxes holding their parties.
ScenarioReport run_scenario(const ScenarioSpec& spec);

/// Bob holds one party of an m-party and one of an n-party isotropic box.
ScenarioSpec swap_two_spec(int m, int n, const Scalar& xi1, const Scalar& xi2);
ScenarioReport swap_two(int m, int n, const Scalar& xi1, const Scalar& xi2);

/// Six PR boxes, three bipartite couplers and three wirings giving a
/// tripartite box among A, C and D.
ScenarioSpec hybrid_three_spec();
ScenarioReport hybrid_three();

/// One coupler of arity N on one party of each of N isotropic boxes.
ScenarioSpec swap_many_spec(const std::vector<int>& arities, const std::vector<Scalar>& xis);
ScenarioReport swap_many(const std::vector<int>& arities, const std::vector<Scalar>& xis);

struct EfficiencyReport {
  int users = 0;
  Scalar hybrid_probability;
  Scalar chi_n_probability;
  long hybrid_boxes = 0;
  long hybrid_couplers = 0;
  long chi_n_boxes = 0;
};

/// Closed-form comparison of the pairwise hybrid scheme with one coupler of arity N.
EfficiencyReport efficiency_compare(int users);

/// Scenario files: either the generic form with "boxes", "couplers",
/// "wirings", "reports", or a preset {"preset": "swap_two" | "swap_many" |
/// "hybrid_three", ...parameters}.
ScenarioReport run_scenario_document(const nlohmann::json& doc);
ScenarioSpec scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const ScenarioSpec& spec);

}  // namespace nlswap
