#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace nlswap {

struct CheckResult {
  std::string id;
  int criterion = 0;
  /// What the reference claims, in words.
  std::string claim;
  bool passed = false;
  /// Known disagreement with the reference, reported rather than hidden.
  bool discrepancy = false;
  std::size_t assertions = 0;
  std::vector<std::string> failures;
  double seconds = 0.0;
};

struct ReproduceOptions {
  /// Check ids to run (exact match); empty runs all.
  std::vector<std::string> filter;
  /// Also assert the literal anti-PR claim, which is expected to fail.
  bool literal_claims = false;
};

/// Unknown id in ReproduceOptions::filter.
class UnknownCheck : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> check_ids();

std::vector<CheckResult> reproduce(const ReproduceOptions& options = {});
bool all_passed(const std::vector<CheckResult>& results);

std::string render_reproduce_table(const std::vector<CheckResult>& results);
nlohmann::json reproduce_to_json(const std::vector<CheckResult>& results);

}  // namespace nlswap
