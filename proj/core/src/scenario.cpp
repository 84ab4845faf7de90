#include "nlswap/scenario.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "nlswap/serialization.hpp"

namespace nlswap {

namespace {

std::string path_text(const std::vector<int>& path) {
  if (path.empty()) return "root";
  std::string out;
  for (int bit : path) out += static_cast<char>('0' + bit);
  return out;
}

}  // namespace

ScenarioCouplerError::ScenarioCouplerError(std::size_t step, std::vector<int> path, const std::string& detail)
    : std::runtime_error("coupler " + std::to_string(step + 1) + " on branch " + path_text(path) + ": " + detail),
      step_(step),
      path_(std::move(path)) {}

bool ScenarioReport::all_checks_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CrossCheck& c) { return c.passed; });
}

const BranchRecord* ScenarioReport::find_branch(const std::vector<int>& outcomes) const {
  for (const auto& b : branches) {
    if (b.outcomes == outcomes) return &b;
  }
  return nullptr;
}

namespace {

// Final party labels in declaration order, with consumed parties dropped and
// each wiring's merged label at the earlier of its two positions.
std::vector<std::string> canonical_labels(const ScenarioSpec& spec) {
  std::vector<std::string> labels;
  std::set<std::string> consumed;
  for (const auto& c : spec.couplers) consumed.insert(c.consumed.begin(), c.consumed.end());
  for (const auto& box : spec.boxes) {
    for (const auto& l : box.labels) {
      if (!consumed.count(l)) labels.push_back(l);
    }
  }
  for (const auto& w : spec.wirings) {
    auto first = std::find(labels.begin(), labels.end(), w.first);
    auto second = std::find(labels.begin(), labels.end(), w.second);
    if (first == labels.end() || second == labels.end()) continue;  // rejected by validate_spec
    if (second < first) std::swap(first, second);
    *first = w.merged;
    labels.erase(second);
  }
  return labels;
}

CrossCheck make_check(std::string name, const Scalar& expected, const Scalar& computed) {
  return {std::move(name), expected.to_string(), computed.to_string(), expected == computed};
}

CrossCheck make_box_check(std::string name, const std::string& expected_text, const BoxTable& expected,
                          const std::optional<BoxTable>& computed) {
  CrossCheck c{std::move(name), expected_text, "no box", false};
  if (computed) {
    c.passed = *computed == expected;
    c.computed = c.passed ? expected_text : "differs entrywise";
  }
  return c;
}

struct Component {
  BoxTable box;
  std::vector<std::string> labels;
};

struct LiveBranch {
  std::vector<int> outcomes;
  Scalar probability;
  bool alive = true;  // false once the branch has probability 0
  std::vector<Component> components;
};

std::pair<std::size_t, int> locate(const std::vector<Component>& comps, const std::string& label) {
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& ls = comps[c].labels;
    auto it = std::find(ls.begin(), ls.end(), label);
    if (it != ls.end()) return {c, static_cast<int>(it - ls.begin())};
  }
  throw ScenarioError("party '" + label + "' is not available");
}

// Tensors the listed components (ascending) into one, placed at the first
// index; returns the new component index.
std::size_t fuse(std::vector<Component>& comps, std::vector<std::size_t> which) {
  std::sort(which.begin(), which.end());
  which.erase(std::unique(which.begin(), which.end()), which.end());
  Component joint = comps[which.front()];
  for (std::size_t k = 1; k < which.size(); ++k) {
    const Component& next = comps[which[k]];
    try {
      joint.box = tensor(joint.box, next.box);
    } catch (const BoxError& e) {
      throw ScenarioError(std::string("table cap exceeded while combining boxes: ") + e.what());
    }
    joint.labels.insert(joint.labels.end(), next.labels.begin(), next.labels.end());
  }
  for (std::size_t k = which.size(); k-- > 1;) comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(which[k]));
  comps[which.front()] = std::move(joint);
  return which.front();
}

Scalar sum_probabilities(const std::vector<BranchRecord>& branches) {
  Scalar total;
  for (const auto& b : branches) total += b.probability;
  return total;
}

}  // namespace

void validate_spec(const ScenarioSpec& spec) {
  if (spec.boxes.empty()) throw ScenarioError("scenario declares no boxes");
  std::set<std::string> labels;
  for (const auto& box : spec.boxes) {
    if (static_cast<int>(box.labels.size()) != box.parties) {
      throw ScenarioError("box '" + box.name + "' has " + std::to_string(box.parties) + " parties but " +
                          std::to_string(box.labels.size()) + " labels");
    }
    for (const auto& l : box.labels) {
      if (l.empty()) throw ScenarioError("box '" + box.name + "' has an empty party label");
      if (!labels.insert(l).second) throw ScenarioError("party label '" + l + "' is used twice");
    }
    try {
      (void)make_box(box.kind, box.parties, box.xi);
    } catch (const BoxError& e) {
      throw ScenarioError("box '" + box.name + "': " + e.what());
    }
  }
  std::set<std::string> consumed;
  for (std::size_t k = 0; k < spec.couplers.size(); ++k) {
    const auto& c = spec.couplers[k];
    const std::string where = "coupler " + std::to_string(k + 1);
    if (c.arity < 2) throw ScenarioError(where + ": arity must be at least 2");
    if (static_cast<int>(c.consumed.size()) != c.arity) {
      throw ScenarioError(where + ": arity " + std::to_string(c.arity) + " but " +
                          std::to_string(c.consumed.size()) + " consumed parties");
    }
    for (const auto& l : c.consumed) {
      if (!labels.count(l)) throw ScenarioError(where + ": unknown party '" + l + "'");
      if (!consumed.insert(l).second) throw ScenarioError(where + ": party '" + l + "' is already consumed");
    }
    if (c.condition && *c.condition != 0 && *c.condition != 1) {
      throw ScenarioError(where + ": condition must be 0 or 1");
    }
  }
  std::set<std::string> live;
  for (const auto& l : labels) {
    if (!consumed.count(l)) live.insert(l);
  }
  for (std::size_t k = 0; k < spec.wirings.size(); ++k) {
    const auto& w = spec.wirings[k];
    const std::string where = "wiring " + std::to_string(k + 1);
    for (const auto* l : {&w.first, &w.second}) {
      if (consumed.count(*l)) throw ScenarioError(where + ": party '" + *l + "' was consumed by a coupler");
      if (!live.count(*l)) throw ScenarioError(where + ": unknown party '" + *l + "'");
    }
    if (w.first == w.second) throw ScenarioError(where + ": cannot wire a party to itself");
    live.erase(w.first);
    live.erase(w.second);
    if (w.merged.empty() || !live.insert(w.merged).second) {
      throw ScenarioError(where + ": merged label '" + w.merged + "' clashes with a live party");
    }
  }
  const auto final_parties = static_cast<int>(live.size());
  if (final_parties > kMaxParties) throw ScenarioError("final box exceeds the table cap");
  for (const auto& r : spec.reports) {
    if (r == "gsi") {
      if (final_parties < 2) throw ScenarioError("report 'gsi' needs at least 2 final parties");
    } else if (r == "ch") {
      if (final_parties != 2) throw ScenarioError("report 'ch' needs exactly 2 final parties");
    } else {
      throw ScenarioError("unknown report functional '" + r + "' (expected gsi or ch)");
    }
  }
}

ScenarioReport run_scenario(const ScenarioSpec& spec) {
  validate_spec(spec);
  ScenarioReport report;
  report.name = spec.name;
  report.labels = canonical_labels(spec);

  LiveBranch root;
  root.probability = Scalar(1);
  for (const auto& decl : spec.boxes) root.components.push_back({make_box(decl.kind, decl.parties, decl.xi), decl.labels});
  std::vector<LiveBranch> branches{std::move(root)};

  for (std::size_t step = 0; step < spec.couplers.size(); ++step) {
    const CouplerStep& cs = spec.couplers[step];
    const CouplerEffect coupler = build_coupler(cs.arity);
    bool law_holds = true;
    std::vector<LiveBranch> next;
    for (auto& branch : branches) {
      std::array<LiveBranch, 2> kids;
      for (int o = 0; o < 2; ++o) {
        kids[o].outcomes = branch.outcomes;
        kids[o].outcomes.push_back(o);
      }
      if (!branch.alive) {
        for (auto& kid : kids) {
          kid.alive = false;
          next.push_back(std::move(kid));
        }
        continue;
      }
      std::vector<std::size_t> involved;
      for (const auto& l : cs.consumed) involved.push_back(locate(branch.components, l).first);
      const std::size_t at = fuse(branch.components, involved);
      const Component& joint = branch.components[at];
      std::vector<int> consumed;
      for (const auto& l : cs.consumed) consumed.push_back(locate(branch.components, l).second);

      const BoxTable bob = marginalize(joint.box, consumed);
      const Scalar law = success_probability(coupler, bob);
      report.allowed.push_back({step, branch.outcomes, is_allowed(coupler, bob), law});

      std::array<BranchResult, 2> results;
      try {
        results = apply_coupler(coupler, joint.box, consumed);
      } catch (const CouplerInvalid& e) {
        throw ScenarioCouplerError(step, branch.outcomes, e.what());
      }
      law_holds = law_holds && results[0].probability == law;

      std::vector<std::string> rest_labels;
      for (int p : surviving_parties(joint.box.parties(), consumed)) {
        rest_labels.push_back(joint.labels[static_cast<std::size_t>(p)]);
      }
      for (int o = 0; o < 2; ++o) {
        LiveBranch& kid = kids[o];
        kid.probability = branch.probability * results[o].probability;
        kid.alive = results[o].box.has_value() && !kid.probability.is_zero();
        if (kid.alive) {
          kid.components = branch.components;
          if (rest_labels.empty()) {
            kid.components.erase(kid.components.begin() + static_cast<std::ptrdiff_t>(at));
          } else {
            kid.components[at] = {*results[o].box, rest_labels};
          }
        }
        next.push_back(std::move(kid));
      }
    }
    branches = std::move(next);
    report.checks.push_back({"coupler " + std::to_string(step + 1) + ": branch probability follows the success law",
                             "equal on every branch", law_holds ? "equal on every branch" : "mismatch", law_holds});
  }

  for (auto& branch : branches) {
    if (!branch.alive) continue;
    for (const auto& w : spec.wirings) {
      auto [c1, p1] = locate(branch.components, w.first);
      auto [c2, p2] = locate(branch.components, w.second);
      if (c1 != c2) {
        fuse(branch.components, {c1, c2});
        std::tie(c1, p1) = locate(branch.components, w.first);
        std::tie(c2, p2) = locate(branch.components, w.second);
      }
      Component& comp = branch.components[c1];
      comp.box = merge_parties(comp.box, p1, p2);
      const int lo = std::min(p1, p2);
      const int hi = std::max(p1, p2);
      comp.labels[static_cast<std::size_t>(lo)] = w.merged;
      comp.labels.erase(comp.labels.begin() + hi);
    }
  }

  const int final_parties = static_cast<int>(report.labels.size());
  for (auto& branch : branches) {
    BranchRecord record;
    record.outcomes = branch.outcomes;
    record.probability = branch.probability;
    for (std::size_t k = 0; k < spec.couplers.size(); ++k) {
      const auto& cond = spec.couplers[k].condition;
      if (cond && record.outcomes[k] != *cond) record.selected = false;
    }
    if (branch.alive) {
      std::vector<std::size_t> all(branch.components.size());
      for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
      if (all.empty()) branch.components.push_back({BoxTable(), {}});
      else fuse(branch.components, all);
      const Component& final_comp = branch.components.front();
      std::vector<int> order;
      for (const auto& l : report.labels) {
        auto it = std::find(final_comp.labels.begin(), final_comp.labels.end(), l);
        order.push_back(static_cast<int>(it - final_comp.labels.begin()));
      }
      record.box = permute(final_comp.box, order);
      for (const auto& r : spec.reports) {
        record.functionals.push_back(
            {r, r == "gsi" ? evaluate(gsi_coefficients(final_parties), *record.box) : ch_evaluate(*record.box)});
      }
      if (final_parties >= 2) record.classification = classify(*record.box);
    }
    if (record.selected) report.selected_probability += record.probability;
    report.branches.push_back(std::move(record));
  }

  report.checks.push_back(make_check("branch probabilities sum to 1", Scalar(1), sum_probabilities(report.branches)));
  return report;
}

ScenarioSpec swap_two_spec(int m, int n, const Scalar& xi1, const Scalar& xi2) {
  if (m < 2 || n < 2) throw ScenarioError("swap_two needs boxes with at least 2 parties");
  for (const Scalar* xi : {&xi1, &xi2}) {
    if (*xi < Scalar(0) || *xi > Scalar(1)) {
      throw ScenarioError("swap_two weight " + xi->to_string() + " is outside the allowed range [0, 1]");
    }
  }
  ScenarioSpec spec;
  spec.name = "swap_two";
  BoxDecl a{"A", BoxKind::isotropic, m, xi1, {}};
  for (int i = 1; i < m; ++i) a.labels.push_back("a" + std::to_string(i));
  a.labels.emplace_back("b1");
  BoxDecl c{"C", BoxKind::isotropic, n, xi2, {"b2"}};
  for (int i = 1; i < n; ++i) c.labels.push_back("c" + std::to_string(i));
  spec.boxes = {a, c};
  spec.couplers = {{2, {"b1", "b2"}, 0}};
  spec.reports = {"gsi"};
  if (m + n - 2 == 2) spec.reports.emplace_back("ch");
  return spec;
}

ScenarioReport swap_two(int m, int n, const Scalar& xi1, const Scalar& xi2) {
  ScenarioReport report = run_scenario(swap_two_spec(m, n, xi1, xi2));
  const int out_parties = m + n - 2;
  const Scalar weight = xi1 * xi2;
  const BranchRecord* success = report.find_branch({0});
  report.checks.push_back(make_check("success probability", Scalar::rational(1, 3), success->probability));
  report.checks.push_back(make_box_check("success box is isotropic GSB_" + std::to_string(out_parties) +
                                             " with weight xi1*xi2",
                                         "isotropic(" + std::to_string(out_parties) + ", " + weight.to_string() + ")",
                                         isotropic_box(out_parties, weight), success->box));
  if (success->classification) {
    const bool expected = weight > Scalar::rational(1, 2);
    report.checks.push_back({"output exceeds the local bound iff xi1*xi2 > 1/2", expected ? "true" : "false",
                             success->classification->exceeds_local ? "true" : "false",
                             expected == success->classification->exceeds_local});
    if (xi1 == xi2) {
      const bool input_postquantum = classify(isotropic_box(m, xi1)).exceeds_quantum;
      report.checks.push_back({"output exceeds the local bound iff the inputs exceed the quantum bound",
                               input_postquantum ? "true" : "false",
                               success->classification->exceeds_local ? "true" : "false",
                               input_postquantum == success->classification->exceeds_local});
    }
  }
  return report;
}

ScenarioSpec hybrid_three_spec() {
  ScenarioSpec spec;
  spec.name = "hybrid_three";
  spec.boxes = {
      {"P1", BoxKind::pr, 2, std::nullopt, {"a1", "b1"}}, {"P2", BoxKind::pr, 2, std::nullopt, {"c2", "b2"}},
      {"P3", BoxKind::pr, 2, std::nullopt, {"c1", "b3"}}, {"P4", BoxKind::pr, 2, std::nullopt, {"d2", "b4"}},
      {"P5", BoxKind::pr, 2, std::nullopt, {"d1", "b5"}}, {"P6", BoxKind::pr, 2, std::nullopt, {"a2", "b6"}},
  };
  spec.couplers = {{2, {"b1", "b2"}, std::nullopt}, {2, {"b3", "b4"}, std::nullopt}, {2, {"b5", "b6"}, std::nullopt}};
  spec.wirings = {{"a1", "a2", "a"}, {"c1", "c2", "c"}, {"d1", "d2", "d"}};
  spec.reports = {"gsi"};
  return spec;
}

ScenarioReport hybrid_three() {
  ScenarioReport report = run_scenario(hybrid_three_spec());
  const BoxTable sb = sb_box();
  const BoxTable uniform = mixed_box(3);
  auto blend = [&](long un, long ud, long sn, long sd) {
    const std::pair<Scalar, BoxTable> terms[] = {{Scalar::rational(un, ud), uniform}, {Scalar::rational(sn, sd), sb}};
    return mix(terms);
  };
  struct Expected {
    const char* name;
    int failures;
    Scalar probability;
    std::string box_text;
    BoxTable box;
  };
  const std::vector<Expected> expected = {
      {"all three couplers succeed", 0, Scalar::rational(1, 27), "SB", sb},
      {"exactly one coupler fails", 1, Scalar::rational(6, 27), "3/2 U - 1/2 SB", blend(3, 2, -1, 2)},
      {"exactly two couplers fail", 2, Scalar::rational(12, 27), "3/4 U + 1/4 SB", blend(3, 4, 1, 4)},
      {"all three couplers fail", 3, Scalar::rational(8, 27), "9/8 U - 1/8 SB", blend(9, 8, -1, 8)},
  };
  for (const auto& e : expected) {
    BranchGroup group{e.name, Scalar(0), std::nullopt, {}};
    bool same_box = true;
    for (const auto& b : report.branches) {
      if (std::count(b.outcomes.begin(), b.outcomes.end(), 1) != e.failures) continue;
      group.probability += b.probability;
      group.members.push_back(b.outcomes);
      if (!group.box) group.box = b.box;
      else same_box = same_box && b.box && *b.box == *group.box;
    }
    if (!same_box) group.box.reset();
    report.checks.push_back(make_check(std::string(e.name) + ": probability", e.probability, group.probability));
    report.checks.push_back(make_box_check(std::string(e.name) + ": box", e.box_text, e.box, group.box));
    report.groups.push_back(std::move(group));
  }
  return report;
}

ScenarioSpec swap_many_spec(const std::vector<int>& arities, const std::vector<Scalar>& xis) {
  const int users = static_cast<int>(arities.size());
  if (users < 2) throw ScenarioError("swap_many needs at least 2 boxes");
  if (xis.size() != arities.size()) throw ScenarioError("swap_many needs one weight per box");
  ScenarioSpec spec;
  spec.name = "swap_many";
  CouplerStep coupler{users, {}, 0};
  for (int i = 0; i < users; ++i) {
    const int n = arities[static_cast<std::size_t>(i)];
    const Scalar& xi = xis[static_cast<std::size_t>(i)];
    if (n < 2) throw ScenarioError("swap_many boxes need at least 2 parties");
    if (xi < Scalar(0) || xi > Scalar(1)) {
      throw ScenarioError("swap_many weight " + xi.to_string() + " is outside the allowed range [0, 1]");
    }
    const std::string tag = std::to_string(i + 1);
    BoxDecl decl{"G" + tag, BoxKind::isotropic, n, xi, {}};
    for (int p = 1; p < n; ++p) decl.labels.push_back("g" + tag + "_" + std::to_string(p));
    decl.labels.push_back("b" + tag);
    coupler.consumed.push_back("b" + tag);
    spec.boxes.push_back(std::move(decl));
  }
  spec.couplers = {coupler};
  spec.reports = {"gsi"};
  return spec;
}

ScenarioReport swap_many(const std::vector<int>& arities, const std::vector<Scalar>& xis) {
  ScenarioReport report = run_scenario(swap_many_spec(arities, xis));
  int out_parties = 0;
  for (int n : arities) out_parties += n - 1;
  Scalar weight(1);
  for (const auto& xi : xis) weight *= xi;
  const BranchRecord* success = report.find_branch({0});
  const BranchRecord* failure = report.find_branch({1});
  const std::string iso_text = "isotropic(" + std::to_string(out_parties) + ", " + weight.to_string() + ")";
  const BoxTable iso = isotropic_box(out_parties, weight);
  report.checks.push_back(make_check("success probability", Scalar::rational(1, 3), success->probability));
  report.checks.push_back(make_box_check("success box is isotropic GSB with the product weight", iso_text, iso,
                                         success->box));
  const std::pair<Scalar, BoxTable> terms[] = {{Scalar::rational(3, 2), mixed_box(out_parties)},
                                               {Scalar::rational(-1, 2), iso}};
  report.checks.push_back(make_box_check("failure box is (3 U - success box) / 2", "3/2 U - 1/2 " + iso_text,
                                         mix(terms), failure->box));
  return report;
}

EfficiencyReport efficiency_compare(int users) {
  if (users < 3) throw ScenarioError("efficiency comparison needs at least 3 users");
  EfficiencyReport r;
  r.users = users;
  r.hybrid_couplers = static_cast<long>(users) * (users - 1) / 2;
  r.hybrid_boxes = static_cast<long>(users) * (users - 1);
  r.hybrid_probability = Scalar(1);
  for (long k = 0; k < r.hybrid_couplers; ++k) r.hybrid_probability *= Scalar::rational(1, 3);
  r.chi_n_probability = Scalar::rational(1, 3);
  r.chi_n_boxes = users;
  return r;
}

// ---------------------------------------------------------------------------
// Scenario files

using nlohmann::json;

namespace {

std::vector<std::string> string_list(const json& doc, const std::string& where) {
  if (!doc.is_array()) throw ParseError(where + ": expected an array of labels");
  std::vector<std::string> out;
  for (const auto& v : doc) {
    if (!v.is_string()) throw ParseError(where + ": labels must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Scalar xi_from(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  return scalar_from_json(doc.at(key));
}

}  // namespace

ScenarioSpec scenario_from_json(const json& doc) try {
  if (!doc.is_object()) throw ParseError("scenario must be a JSON object");
  ScenarioSpec spec;
  spec.name = doc.value("name", std::string("scenario"));
  if (!doc.contains("boxes")) throw ParseError("scenario: missing key \"boxes\"");
  const json& boxes = doc.at("boxes");
  if (!boxes.is_array()) throw ParseError("\"boxes\" must be an array");
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    const json& b = boxes[k];
    const std::string where = "boxes[" + std::to_string(k) + "]";
    if (!b.is_object() || !b.contains("kind") || !b.contains("parties")) {
      throw ParseError(where + ": needs \"kind\" and \"parties\"");
    }
    BoxDecl decl;
    decl.name = b.value("name", "box" + std::to_string(k + 1));
    try {
      decl.kind = parse_box_kind(b.at("kind").get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
    decl.labels = string_list(b.at("parties"), where + ".parties");
    decl.parties = b.contains("n") ? b.at("n").get<int>() : static_cast<int>(decl.labels.size());
    if (b.contains("xi")) decl.xi = scalar_from_json(b.at("xi"));
    spec.boxes.push_back(std::move(decl));
  }
  if (doc.contains("couplers")) {
    for (const json& c : doc.at("couplers")) {
      CouplerStep step;
      if (!c.is_object() || !c.contains("consumed")) throw ParseError("couplers: each entry needs \"consumed\"");
      step.consumed = string_list(c.at("consumed"), "couplers.consumed");
      step.arity = c.value("arity", static_cast<int>(step.consumed.size()));
      if (c.contains("condition") && !c.at("condition").is_null()) step.condition = c.at("condition").get<int>();
      spec.couplers.push_back(std::move(step));
    }
  }
  if (doc.contains("wirings")) {
    for (const json& w : doc.at("wirings")) {
      if (!w.is_object() || !w.contains("parties") || !w.contains("merged")) {
        throw ParseError("wirings: each entry needs \"parties\" (two labels) and \"merged\"");
      }
      const auto pair = string_list(w.at("parties"), "wirings.parties");
      if (pair.size() != 2) throw ParseError("wirings: \"parties\" must name exactly two labels");
      spec.wirings.push_back({pair[0], pair[1], w.at("merged").get<std::string>()});
    }
  }
  if (doc.contains("reports")) spec.reports = string_list(doc.at("reports"), "reports");
  return spec;
} catch (const json::exception& e) {
  throw ParseError(std::string("scenario: ") + e.what());
}

json scenario_to_json(const ScenarioSpec& spec) {
  json doc = json::object();
  doc["name"] = spec.name;
  json boxes = json::array();
  for (const auto& b : spec.boxes) {
    json entry = {{"name", b.name}, {"kind", to_string(b.kind)}, {"n", b.parties}, {"parties", b.labels}};
    if (b.xi) entry["xi"] = scalar_to_json(*b.xi);
    boxes.push_back(std::move(entry));
  }
  doc["boxes"] = std::move(boxes);
  json couplers = json::array();
  for (const auto& c : spec.couplers) {
    json entry = {{"arity", c.arity}, {"consumed", c.consumed}};
    entry["condition"] = c.condition ? json(*c.condition) : json(nullptr);
    couplers.push_back(std::move(entry));
  }
  doc["couplers"] = std::move(couplers);
  json wirings = json::array();
  for (const auto& w : spec.wirings) {
    wirings.push_back({{"parties", {w.first, w.second}}, {"merged", w.merged}});
  }
  doc["wirings"] = std::move(wirings);
  doc["reports"] = spec.reports;
  return doc;
}

ScenarioReport run_scenario_document(const json& doc) {
  if (doc.is_object() && doc.contains("preset")) try {
    const std::string preset = doc.at("preset").get<std::string>();
    if (preset == "hybrid_three") return hybrid_three();
    if (preset == "swap_two") {
      return swap_two(doc.value("m", 2), doc.value("n", 2), xi_from(doc, "xi1"), xi_from(doc, "xi2"));
    }
    if (preset == "swap_many") {
      if (!doc.contains("arities") || !doc.contains("xis")) {
        throw ParseError("swap_many preset needs \"arities\" and \"xis\"");
      }
      std::vector<Scalar> xis;
      for (const auto& v : doc.at("xis")) xis.push_back(scalar_from_json(v));
      return swap_many(doc.at("arities").get<std::vector<int>>(), xis);
    }
    throw ParseError("unknown preset '" + preset + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario preset: ") + e.what());
  }
  return run_scenario(scenario_from_json(doc));
}

}  // namespace nlswap
