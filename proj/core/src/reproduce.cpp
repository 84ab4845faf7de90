#include "nlswap/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "nlswap/box.hpp"
#include "nlswap/coupler.hpp"
#include "nlswap/functional.hpp"
#include "nlswap/report.hpp"
#include "nlswap/scenario.hpp"

namespace nlswap {

namespace {

constexpr std::uint64_t kSeed = 0x5eed2024ULL;
constexpr int kPropertyCases = 200;

class Tally {
 public:
  explicit Tally(CheckResult& result) : result_(result) {}

  bool expect(bool ok, const std::string& what) {
    ++result_.assertions;
    if (!ok) result_.failures.push_back(what);
    return ok;
  }
  bool equal(const Scalar& expected, const Scalar& got, const std::string& what) {
    return expect(expected == got, what + ": expected " + expected.to_string() + ", got " + got.to_string());
  }
  bool same_box(const BoxTable& expected, const std::optional<BoxTable>& got, const std::string& what) {
    if (!got) return expect(false, what + ": branch has no box");
    return expect(expected == *got, what + ": box differs");
  }

 private:
  CheckResult& result_;
};

using Body = std::function<void(Tally&)>;

struct CheckDef {
  std::string id;
  int criterion;
  std::string claim;
  Body body;
  bool discrepancy = false;
};

Scalar q(long num, long den = 1) { return Scalar::rational(num, den); }

/// Entanglement swap on the last party of `a` and the first party of `b`.
std::array<BranchResult, 2> swap_pair(const BoxTable& a, const BoxTable& b,
                                      CouplerForm form = CouplerForm::swap) {
  const int consumed[] = {a.parties() - 1, a.parties()};
  return apply_coupler(build_coupler(2, form), tensor(a, b), consumed);
}

// ---------------------------------------------------------------------------
// random boxes

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// Convex weights with small denominators.
  std::vector<Scalar> convex(std::size_t count) {
    std::vector<long> raw(count);
    for (auto& r : raw) r = pick(0, 6);
    long total = std::accumulate(raw.begin(), raw.end(), 0L);
    if (total == 0) {
      raw[0] = 1;
      total = 1;
    }
    std::vector<Scalar> out;
    for (long r : raw) out.push_back(q(r, total));
    return out;
  }

  /// Affine weights summing to 1, some negative.
  std::vector<Scalar> affine(std::size_t count) {
    std::vector<Scalar> out;
    Scalar rest(1);
    for (std::size_t i = 0; i + 1 < count; ++i) {
      out.push_back(q(pick(-5, 5), pick(1, 4)));
      rest -= out.back();
    }
    out.push_back(rest);
    return out;
  }

  BoxTable deterministic(int parties) {
    std::vector<LocalResponse> responses;
    for (int i = 0; i < parties; ++i) responses.push_back(static_cast<LocalResponse>(pick(0, 3)));
    return deterministic_box(responses);
  }

  /// Convex mixture of extremal, mixed, failure and local deterministic boxes.
  BoxTable box(int parties) {
    std::vector<BoxTable> pool = {gsb_box(parties), isotropic_box(parties, Scalar(-1)), mixed_box(parties),
                                  failure_box(parties), deterministic(parties), deterministic(parties)};
    const auto weights = convex(pool.size());
    std::vector<std::pair<Scalar, BoxTable>> terms;
    for (std::size_t i = 0; i < pool.size(); ++i) terms.emplace_back(weights[i], pool[i]);
    return mix(terms);
  }

  Scalar weight() {
    static const std::vector<Scalar> choices = {q(0), q(1, 4), q(1, 2), q(2, 3), Scalar::inv_sqrt2(), q(3, 4), q(1)};
    return choices[static_cast<std::size_t>(pick(0, static_cast<int>(choices.size()) - 1))];
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// checks

void gsi_bounds(Tally& t) {
  for (int n = 2; n <= 6; ++n) {
    const BoundTriple b = bounds(n);
    const Scalar half = Scalar::pow2(n - 1);
    const std::string tag = "n=" + std::to_string(n);
    t.equal(half, b.local, tag + " local");
    t.equal(half * Scalar::sqrt2(), b.quantum, tag + " quantum");
    t.equal(Scalar::pow2(n), b.algebraic, tag + " algebraic");
  }
  t.equal(q(8), bounds(3).algebraic, "n=3 algebraic maximum 8");
  t.equal(Scalar(0, 4), bounds(3).quantum, "n=3 quantum bound 4√2");
}

void gsi_extremes(Tally& t) {
  for (int n = 2; n <= 6; ++n) {
    const std::string tag = "n=" + std::to_string(n);
    t.equal(Scalar::pow2(n), evaluate(gsi_coefficients(n), gsb_box(n)), tag + " GSI(GSB)");
    t.equal(q(0), evaluate(gsi_coefficients(n), mixed_box(n)), tag + " GSI(uniform)");
  }
}

void ch_chsh_consistency(Tally& t) {
  Sampler s(kSeed);
  const CouplerEffect chi2 = build_coupler(2);
  const BellFunctional chsh = gsi_coefficients(2);
  for (int i = 0; i < 100; ++i) {
    std::vector<BoxTable> pool = {pr_box(), anti_pr_box(), mixed_box(2), s.deterministic(2), s.deterministic(2)};
    const auto weights = s.convex(pool.size());
    std::vector<std::pair<Scalar, BoxTable>> terms;
    for (std::size_t k = 0; k < pool.size(); ++k) terms.emplace_back(weights[k], pool[k]);
    const BoxTable box = mix(terms);
    const Scalar ch = ch_evaluate(box);
    const std::string tag = "mixture " + std::to_string(i);
    t.equal(4 * ch - 2, evaluate(chsh, box), tag + " CHSH = 4 CH - 2");
    // success law in correlator form and in CH form
    const Scalar p = success_probability(chi2, box);
    t.equal(q(1, 3) + evaluate(chsh, box) / 6, p, tag + " p(b'=0) from CHSH");
    t.equal(q(2, 3) * ch, p, tag + " p(b'=0) from CH");
  }
}

void coupler_pr_pr(Tally& t) {
  const auto branches = swap_pair(pr_box(), pr_box());
  t.equal(q(1, 3), branches[0].probability, "success probability");
  t.same_box(pr_box(), branches[0].box, "success box is PR");
  t.equal(q(2, 3), branches[1].probability, "failure probability");
  const std::pair<Scalar, BoxTable> terms[] = {{q(3, 2), mixed_box(2)}, {q(-1, 2), pr_box()}};
  t.same_box(mix(terms), branches[1].box, "failure box is (3 U - PR)/2");
  t.same_box(failure_box(2), branches[1].box, "failure box matches failure_box(2)");
}

void tsirelson_emergence(Tally& t) {
  const Scalar r = Scalar::inv_sqrt2();
  const auto branches = swap_pair(isotropic_box(2, r), isotropic_box(2, r));
  t.same_box(isotropic_box(2, q(1, 2)), branches[0].box, "success box is isotropic with weight 1/2");
  if (branches[0].box) {
    const Classification c = classify(*branches[0].box);
    t.equal(q(2), c.gsi_value, "CHSH value of the output");
    t.expect(!c.exceeds_local, "output does not exceed the local bound");
  }
  for (const Scalar& xi : {q(7, 10), r, q(3, 4)}) {
    const auto out = swap_pair(isotropic_box(2, xi), isotropic_box(2, xi));
    const bool input_postquantum = classify(isotropic_box(2, xi)).exceeds_quantum;
    const bool output_nonlocal = out[0].box && classify(*out[0].box).exceeds_local;
    t.expect(input_postquantum == output_nonlocal,
             "xi=" + xi.to_string() + ": output nonlocal iff input postquantum");
  }
}

void two_multipartite_swap(Tally& t) {
  const ScenarioReport report = swap_two(3, 3, q(1), q(1));
  const BranchRecord* success = report.find_branch({0});
  t.equal(q(1, 3), success->probability, "GSB3 x GSB3 success probability");
  t.same_box(gsb_box(4), success->box, "GSB3 x GSB3 success box is GSB4");
  for (const Scalar& xi : {q(1, 2), Scalar::inv_sqrt2()}) {
    const ScenarioReport noisy = swap_two(3, 3, xi, xi);
    const BranchRecord* b = noisy.find_branch({0});
    t.equal(q(1, 3), b->probability, "xi=" + xi.to_string() + " success probability");
    t.same_box(isotropic_box(4, xi * xi), b->box, "xi=" + xi.to_string() + " output weight xi^2");
  }
}

void hybrid_scheme(Tally& t) {
  const ScenarioReport report = hybrid_three();
  const std::vector<Scalar> expected = {q(1, 27), q(6, 27), q(12, 27), q(8, 27)};
  t.expect(report.groups.size() == expected.size(), "four failure-count groups");
  for (std::size_t i = 0; i < std::min(expected.size(), report.groups.size()); ++i) {
    t.equal(expected[i], report.groups[i].probability, report.groups[i].name);
  }
  for (const auto& c : report.checks) t.expect(c.passed, c.name + ": expected " + c.expected + ", got " + c.computed);
}

void chi_n_swap(Tally& t) {
  const ScenarioReport sb = swap_many({2, 2, 2}, {q(1), q(1), q(1)});
  const BranchRecord* success = sb.find_branch({0});
  t.equal(q(1, 3), success->probability, "three PR boxes: success probability");
  t.same_box(sb_box(), success->box, "three PR boxes: success box is SB");
  const ScenarioReport g4 = swap_many({3, 2, 2}, {q(1), q(1), q(1)});
  t.same_box(gsb_box(4), g4.find_branch({0})->box, "GSB3, PR, PR: success box is GSB4");
  t.equal(q(1, 3), g4.find_branch({0})->probability, "GSB3, PR, PR: success probability");
  const EfficiencyReport e = efficiency_compare(3);
  t.equal(q(1, 27), e.hybrid_probability, "pairwise scheme success probability");
  t.equal(q(1, 3), e.chi_n_probability, "single coupler success probability");
}

void deterministic_outcome(Tally& t) {
  for (int n = 2; n <= 6; ++n) {
    const CouplerEffect chi = build_coupler(n);
    const std::string tag = "N=" + std::to_string(n);
    t.equal(q(1), success_probability(chi, gsb_box(n)), tag + " p(b'=0) on GSB");
    t.equal(q(0), success_probability(chi, failure_box(n)), tag + " p(b'=0) on failure box");
    // GSI at the two ends of the allowed region
    const BoxTable low = isotropic_box(n, q(-1, 2));
    t.equal(-Scalar::pow2(n - 1), evaluate(gsi_coefficients(n), low), tag + " GSI at the lower edge");
    t.expect(is_allowed(chi, low), tag + " lower edge allowed");
    t.equal(q(0), success_probability(chi, low), tag + " p(b'=0) at the lower edge");
    t.expect(is_allowed(chi, gsb_box(n)), tag + " upper edge allowed");
  }
}

void noise_law(Tally& t) {
  const Scalar r = Scalar::inv_sqrt2();
  for (int users = 2; users <= 3; ++users) {
    for (int mask = 0; mask < (1 << users); ++mask) {
      std::vector<Scalar> xis;
      int noisy = 0;
      for (int i = 0; i < users; ++i) {
        const bool is_noisy = (mask >> i) & 1;
        noisy += is_noisy;
        xis.push_back(is_noisy ? r : q(1));
      }
      const ScenarioReport report = swap_many(std::vector<int>(static_cast<std::size_t>(users), 2), xis);
      const BranchRecord* success = report.find_branch({0});
      Scalar weight(1);
      for (const auto& xi : xis) weight *= xi;
      const std::string tag = std::to_string(users) + " boxes, " + std::to_string(noisy) + " noisy";
      t.same_box(isotropic_box(users, weight), success->box, tag + ": output weight is the product");
      if (!success->classification) continue;
      const bool at_bound = success->classification->gsi_value == bounds(users).local;
      t.expect(at_bound == (noisy == 2), tag + ": exactly at the local bound iff two boxes are noisy");
    }
  }
  const std::vector<std::pair<std::vector<int>, std::vector<Scalar>>> mixed_cases = {
      {{3, 2}, {q(3, 4), q(1, 2)}},
      {{2, 2, 2}, {q(1, 2), q(3, 4), r}},
      {{2, 3}, {q(2, 3), r}},
  };
  for (const auto& [arities, xis] : mixed_cases) {
    const ScenarioReport report = swap_many(arities, xis);
    for (const auto& c : report.checks) t.expect(c.passed, c.name + ": expected " + c.expected + ", got " + c.computed);
  }
}

void properties(Tally& t) {
  Sampler s(kSeed + 11);
  const CouplerEffect chi2 = build_coupler(2);

  // linearity on affine decompositions
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto lambdas = s.affine(3);
    std::vector<BoxTable> joints;
    std::vector<std::pair<Scalar, BoxTable>> terms;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      joints.push_back(tensor(s.box(2), s.box(2)));
      terms.emplace_back(lambdas[k], joints.back());
    }
    const BoxTable combined = mix(terms, BoxTable::Kind::quasi);
    const int consumed[] = {1, 2};
    const auto whole = branch_tables(chi2, combined, consumed);
    for (int outcome = 0; outcome < 2; ++outcome) {
      std::vector<std::pair<Scalar, BoxTable>> parts;
      for (std::size_t k = 0; k < joints.size(); ++k) {
        parts.emplace_back(lambdas[k], branch_tables(chi2, joints[k], consumed)[static_cast<std::size_t>(outcome)]);
      }
      // masses of the parts need not sum to 1, so add them up by hand
      std::vector<Scalar> sum(whole[0].entries().size());
      for (const auto& [w, table] : parts) {
        for (std::size_t e = 0; e < sum.size(); ++e) sum[e] += w * table.entries()[e];
      }
      t.expect(std::equal(sum.begin(), sum.end(), whole[static_cast<std::size_t>(outcome)].entries().begin()),
               "linearity case " + std::to_string(i) + " branch " + std::to_string(outcome));
    }
  }

  // nonsignaling branches for product joints
  for (int i = 0; i < kPropertyCases; ++i) {
    const int users = s.pick(0, 3) == 0 ? 3 : 2;
    BoxTable joint;
    std::vector<int> consumed;
    for (int u = 0; u < users; ++u) {
      const int n = users == 3 ? 2 : s.pick(2, 3);
      consumed.push_back(joint.parties() + s.pick(0, n - 1));
      joint = tensor(joint, s.box(n));
    }
    const std::string tag = "nonsignaling case " + std::to_string(i);
    try {
      const auto branches = apply_coupler(build_coupler(users), joint, consumed);
      Scalar mass;
      for (const auto& b : branches) {
        mass += b.probability;
        if (b.box) t.expect(validate(*b.box).ok(), tag + ": branch box validates");
      }
      t.equal(q(1), mass, tag + ": branch masses");
    } catch (const CouplerInvalid& e) {
      t.expect(false, tag + ": " + e.what());
    }
  }

  // branch-mass normalization in scenarios
  for (int i = 0; i < kPropertyCases; ++i) {
    ScenarioReport report;
    if (s.pick(0, 1) == 0) {
      report = swap_two(s.pick(2, 3), s.pick(2, 3), s.weight(), s.weight());
    } else {
      const int users = s.pick(2, 3);
      std::vector<int> arities;
      std::vector<Scalar> xis;
      for (int u = 0; u < users; ++u) {
        arities.push_back(users == 3 ? 2 : s.pick(2, 3));
        xis.push_back(s.weight());
      }
      report = swap_many(arities, xis);
    }
    Scalar mass;
    for (const auto& b : report.branches) mass += b.probability;
    t.equal(q(1), mass, "scenario case " + std::to_string(i) + " total mass");
  }

  // permutation invariance of GSI
  for (int i = 0; i < kPropertyCases; ++i) {
    const int n = s.pick(2, 4);
    const BoxTable box = s.box(n);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), s.engine());
    t.equal(evaluate(gsi_coefficients(n), box), evaluate(gsi_coefficients(n), permute(box, order)),
            "GSI permutation case " + std::to_string(i));
  }

  // permutation invariance of swap_many
  for (int i = 0; i < kPropertyCases; ++i) {
    const int users = s.pick(2, 3);
    std::vector<int> arities;
    std::vector<Scalar> xis;
    for (int u = 0; u < users; ++u) {
      arities.push_back(users == 3 ? 2 : s.pick(2, 3));
      xis.push_back(s.weight());
    }
    std::vector<int> sigma(static_cast<std::size_t>(users));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), s.engine());
    std::vector<int> p_arities;
    std::vector<Scalar> p_xis;
    for (int k : sigma) {
      p_arities.push_back(arities[static_cast<std::size_t>(k)]);
      p_xis.push_back(xis[static_cast<std::size_t>(k)]);
    }
    const ScenarioReport base = swap_many(arities, xis);
    const ScenarioReport moved = swap_many(p_arities, p_xis);
    // block of original box j inside the permuted output
    std::vector<int> start(static_cast<std::size_t>(users));
    int offset = 0;
    for (int k = 0; k < users; ++k) {
      start[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])] = offset;
      offset += p_arities[static_cast<std::size_t>(k)] - 1;
    }
    std::vector<int> order;
    for (int j = 0; j < users; ++j) {
      for (int p = 0; p < arities[static_cast<std::size_t>(j)] - 1; ++p) order.push_back(start[static_cast<std::size_t>(j)] + p);
    }
    const std::string tag = "swap_many permutation case " + std::to_string(i);
    for (int outcome = 0; outcome < 2; ++outcome) {
      const BranchRecord* a = base.find_branch({outcome});
      const BranchRecord* b = moved.find_branch({outcome});
      t.equal(a->probability, b->probability, tag + " probability");
      if (a->box && b->box) {
        t.expect(*a->box == permute(*b->box, order), tag + " box");
      } else {
        t.expect(!a->box && !b->box, tag + " empty branches agree");
      }
    }
  }
}

void discrepancies(Tally& t) {
  // anti-PR on one side flips the sign of the weight
  for (const Scalar& xi : {q(1), q(1, 2), Scalar::inv_sqrt2(), q(1, 3)}) {
    const auto out = swap_pair(anti_pr_box(), isotropic_box(2, xi));
    const std::string tag = "xi=" + xi.to_string();
    t.same_box(isotropic_box(2, -xi), out[0].box, tag + ": anti-PR swap gives weight -xi");
    if (out[0].box && xi != q(1, 2)) {
      t.expect(*out[0].box != isotropic_box(2, q(1) - xi), tag + ": result differs from weight 1-xi");
    }
  }
  // the correlator-form coupler breaks the GSB law beyond two subsystems
  const BoxTable joint = tensor(tensor(pr_box(), pr_box()), pr_box());
  const int consumed[] = {1, 3, 5};
  const auto tables = branch_tables(build_coupler(3, CouplerForm::gsi_correlator), joint, consumed);
  Scalar mass;
  for (Word a = 0; a < tables[0].words(); ++a) mass += tables[0].at(0, a);
  t.expect(mass.is_zero() || tables[0].scaled(mass.inverse()) != sb_box(),
           "correlator-form coupler on three PR boxes does not give SB");
  const auto swapped = apply_coupler(build_coupler(3), joint, consumed);
  t.same_box(sb_box(), swapped[0].box, "swap-form coupler on three PR boxes gives SB");
}

void literal_claim(Tally& t) {
  for (const Scalar& xi : {q(1), q(1, 2), Scalar::inv_sqrt2()}) {
    const auto out = swap_pair(anti_pr_box(), isotropic_box(2, xi));
    t.same_box(isotropic_box(2, q(1) - xi), out[0].box,
               "xi=" + xi.to_string() + ": literal claim anti-PR swap gives weight 1-xi");
  }
}

const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> checks = {
      {"gsi-bounds", 1, "bound table (2^{n-1}, 2^{n-1}√2, 2^n) for n=2..6; n=3 has maximum 8, quantum bound 4√2",
       gsi_bounds},
      {"gsi-extremes", 2, "GSI of GSB_n is 2^n and of the uniform box is 0 for n=2..6", gsi_extremes},
      {"ch-chsh-consistency", 3, "CHSH = 4 CH - 2 on random mixtures; both forms of the success law agree",
       ch_chsh_consistency},
      {"coupler-pr-pr", 4, "PR x PR swaps to PR with probability 1/3, else (3U - PR)/2", coupler_pr_pr},
      {"tsirelson-emergence", 5,
       "weights 1/√2 swap to weight 1/2 at CHSH 2; output nonlocal iff inputs postquantum", tsirelson_emergence},
      {"two-multipartite-swap", 6, "GSB3 x GSB3 swaps to GSB4 at 1/3; noisy inputs give weight xi^2",
       two_multipartite_swap},
      {"hybrid-scheme", 7, "pairwise scheme: 1/27 SB, 6/27, 12/27, 8/27 with the stated mixtures", hybrid_scheme},
      {"chi-n-swap", 8, "three PR boxes swap to SB at 1/3; GSB3 and two PR give GSB4; 1/27 vs 1/3", chi_n_swap},
      {"deterministic-outcome", 9,
       "success is certain on GSB_N and impossible on the failure box; allowed-region edges give 0 and 1",
       deterministic_outcome},
      {"noise-law", 10, "output weight is the product of weights; local bound reached iff two boxes at 1/√2",
       noise_law},
      {"properties", 11, "linearity, nonsignaling branches, branch masses, permutation invariance", properties},
      {"discrepancies", 12, "anti-PR swap follows bilinearity (weight -xi), not 1-xi; correlator-form coupler fails at N=3",
       discrepancies},
  };
  return checks;
}

const CheckDef& literal_check() {
  static const CheckDef def{"literal-claims", 12, "literal claim: anti-PR swap with weight xi gives weight 1-xi",
                            literal_claim, true};
  return def;
}

CheckResult run_check(const CheckDef& def) {
  CheckResult result{def.id, def.criterion, def.claim, false, def.discrepancy, 0, {}, 0.0};
  Tally tally(result);
  const auto start = std::chrono::steady_clock::now();
  try {
    def.body(tally);
  } catch (const std::exception& e) {
    tally.expect(false, std::string("exception: ") + e.what());
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.passed = result.failures.empty();
  return result;
}

}  // namespace

std::vector<std::string> check_ids() {
  std::vector<std::string> ids;
  for (const auto& c : registry()) ids.push_back(c.id);
  ids.push_back(literal_check().id);
  return ids;
}

std::vector<CheckResult> reproduce(const ReproduceOptions& options) {
  const auto known = check_ids();
  for (const auto& f : options.filter) {
    if (std::find(known.begin(), known.end(), f) == known.end()) throw UnknownCheck("unknown check id: " + f);
  }
  auto wanted = [&](const std::string& id) {
    return options.filter.empty() || std::find(options.filter.begin(), options.filter.end(), id) != options.filter.end();
  };
  std::vector<CheckResult> results;
  for (const auto& def : registry()) {
    if (wanted(def.id)) results.push_back(run_check(def));
  }
  const bool literal_requested =
      std::find(options.filter.begin(), options.filter.end(), literal_check().id) != options.filter.end();
  if ((options.literal_claims && wanted(literal_check().id)) || literal_requested) {
    results.push_back(run_check(literal_check()));
  }
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

std::string render_reproduce_table(const std::vector<CheckResult>& results) {
  std::size_t id_width = 2;
  for (const auto& r : results) id_width = std::max(id_width, r.id.size());
  std::ostringstream out;
  out << "#   " << std::string("check") + std::string(id_width - 3, ' ') << "result    claim\n";
  for (const auto& r : results) {
    std::string verdict = r.passed ? "PASS" : (r.discrepancy ? "DISCREP" : "FAIL");
    out << (r.criterion < 10 ? " " : "") << r.criterion << "  " << r.id << std::string(id_width + 2 - r.id.size(), ' ')
        << verdict << std::string(10 - verdict.size(), ' ') << r.claim << '\n';
    const std::size_t shown = std::min<std::size_t>(r.failures.size(), 5);
    for (std::size_t i = 0; i < shown; ++i) out << "      - " << r.failures[i] << '\n';
    if (r.failures.size() > shown) out << "      ... " << r.failures.size() - shown << " more\n";
    if (r.discrepancy && !r.passed) out << "      documented disagreement with the reference claim\n";
  }
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed;
  out << passed << "/" << results.size() << " checks passed\n";
  return out.str();
}

nlohmann::json reproduce_to_json(const std::vector<CheckResult>& results) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& r : results) {
    checks.push_back({{"id", r.id},
                      {"criterion", r.criterion},
                      {"claim", r.claim},
                      {"passed", r.passed},
                      {"discrepancy", r.discrepancy},
                      {"assertions", r.assertions},
                      {"seconds", r.seconds},
                      {"failures", r.failures}});
  }
  return {{"checks", checks}, {"passed", all_passed(results)}};
}

}  // namespace nlswap
