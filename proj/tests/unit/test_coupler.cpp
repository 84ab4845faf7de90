#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "nlswap/box.hpp"
#include "nlswap/coupler.hpp"
#include "nlswap/functional.hpp"
#include "oracle.hpp"

using namespace nlswap;

namespace {

Scalar q(long n, long d = 1) { return Scalar::rational(n, d); }

// Success coefficient D_y by explicit Walsh sum over the cosine-generated signs.
Scalar oracle_d(int n, Word y) {
  long acc = 0;
  for (Word s = 0; s < (Word{1} << n); ++s) acc += oracle::gsi_sign(s) * (oracle::ones(y & s) % 2 ? -1 : 1);
  return q(acc, 2);
}

Scalar oracle_weight(int n, int outcome, Word b, Word y) {
  const Scalar success = (Scalar(1) + 2 * oracle_d(n, y) * Scalar(oracle::ones(b) % 2 ? -1 : 1)) /
                         (Scalar(3) * Scalar(1L << n));
  return outcome == 0 ? success : q(1, 1L << n) - success;
}

// Unnormalized branch table by direct summation over the joint.
BoxTable oracle_branch(const BoxTable& joint, const std::vector<int>& consumed, int outcome) {
  const int n = joint.parties();
  const int k = static_cast<int>(consumed.size());
  std::vector<int> rest;
  for (int p = 0; p < n; ++p)
    if (std::find(consumed.begin(), consumed.end(), p) == consumed.end()) rest.push_back(p);
  const int m = static_cast<int>(rest.size());
  return oracle::build(m, [&](Word x, Word a) {
    Scalar total;
    for (Word y = 0; y < (Word{1} << k); ++y) {
      for (Word b = 0; b < (Word{1} << k); ++b) {
        Word X = 0;
        Word A = 0;
        for (int i = 0; i < m; ++i) {
          X |= static_cast<Word>(oracle::bit(x, i)) << rest[static_cast<std::size_t>(i)];
          A |= static_cast<Word>(oracle::bit(a, i)) << rest[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < k; ++i) {
          X |= static_cast<Word>(oracle::bit(y, i)) << consumed[static_cast<std::size_t>(i)];
          A |= static_cast<Word>(oracle::bit(b, i)) << consumed[static_cast<std::size_t>(i)];
        }
        total += oracle_weight(k, outcome, b, y) * joint.at(X, A);
      }
    }
    return total;
  });
}

std::array<BranchResult, 2> swap_ends(const BoxTable& a, const BoxTable& b) {
  const int consumed[] = {a.parties() - 1, a.parties()};
  return apply_coupler(build_coupler(2), tensor(a, b), consumed);
}

}  // namespace

TEST(BuildCoupler, TwoPartyWeights) {
  const CouplerEffect c = build_coupler(2);
  EXPECT_EQ(c.weight(0, 0b00, 0b00), q(1, 4));
  EXPECT_EQ(c.weight(0, 0b01, 0b00), q(-1, 12));
  EXPECT_EQ(c.weight(1, 0b00, 0b00), Scalar(0));
  EXPECT_EQ(c.weight(1, 0b11, 0b01), Scalar(0));
  EXPECT_EQ(c.weight(0, 0b00, 0b11), q(-1, 12));
}

TEST(BuildCoupler, UniformQuasiInput) {
  for (int n = 2; n <= 5; ++n) {
    const CouplerEffect c = build_coupler(n);
    for (Word y = 0; y < (Word{1} << n); ++y)
      for (Word b = 0; b < (Word{1} << n); ++b) {
        EXPECT_EQ(c.weight(0, b, y) + c.weight(1, b, y), Scalar::pow2(-n));
        EXPECT_EQ(c.weight(0, b, y), oracle_weight(n, 0, b, y));
      }
  }
}

TEST(BuildCoupler, SomeWeightsNegative) {
  const CouplerEffect c = build_coupler(3);
  bool negative = false;
  for (Word y = 0; y < 8; ++y)
    for (Word b = 0; b < 8; ++b) negative = negative || c.weight(0, b, y) < Scalar(0);
  EXPECT_TRUE(negative);
}

TEST(BuildCoupler, SuccessCoefficients) {
  EXPECT_EQ(swap_coefficients(2), gsi_coefficients(2));
  EXPECT_EQ(build_coupler(2).success_functional(), build_coupler(2, CouplerForm::gsi_correlator).success_functional());
  const std::map<int, std::vector<long>> allowed = {{3, {-2, 0, 2}}, {4, {-2, 2}}, {5, {-4, 0, 4}}, {6, {-4, 4}}};
  for (const auto& [n, values] : allowed) {
    const BellFunctional d = swap_coefficients(n);
    for (Word y = 0; y < (Word{1} << n); ++y) {
      EXPECT_EQ(d.coeffs[y], oracle_d(n, y));
      bool found = false;
      for (long v : values) found = found || d.coeffs[y] == Scalar(v);
      EXPECT_TRUE(found) << n << " " << y;
    }
  }
  EXPECT_THROW(build_coupler(1), BoxError);
}

TEST(SuccessProbability, UniformGivesThird) {
  for (int n = 2; n <= 6; ++n) EXPECT_EQ(success_probability(build_coupler(n), mixed_box(n)), q(1, 3));
}

TEST(SuccessProbability, DeterministicOnGsbAndFailure) {
  for (int n = 2; n <= 3; ++n) {
    EXPECT_EQ(success_probability(build_coupler(n), gsb_box(n)), Scalar(1));
    EXPECT_EQ(success_probability(build_coupler(n), failure_box(n)), Scalar(0));
  }
}

// The GSB-output law fixes the success functional; beyond three subsystems
// its value on GSB_N is not 2^N, so the success probability is not 1.
TEST(SuccessProbability, GsbBeyondThreeDocumented) {
  EXPECT_EQ(success_probability(build_coupler(4), gsb_box(4)), q(1, 3));
  EXPECT_EQ(success_probability(build_coupler(5), gsb_box(5)), Scalar(-1));
  EXPECT_EQ(success_probability(build_coupler(6), gsb_box(6)), q(-7, 3));
  EXPECT_FALSE(is_allowed(build_coupler(5), gsb_box(5)));
}

TEST(SuccessProbability, ChshLaw) {
  oracle::Sampler s(41);
  for (int i = 0; i < 100; ++i) {
    const BoxTable b = s.box(2);
    EXPECT_EQ(success_probability(build_coupler(2), b), q(1, 3) + oracle::chsh(b) / Scalar(6));
    EXPECT_EQ(success_probability(build_coupler(2), b), q(2, 3) * oracle::ch(b));
  }
  EXPECT_THROW(success_probability(build_coupler(2), sb_box()), BoxError);
}

TEST(IsAllowed, Examples) {
  const CouplerEffect c = build_coupler(2);
  EXPECT_TRUE(is_allowed(c, mixed_box(2)));
  EXPECT_FALSE(is_allowed(c, anti_pr_box()));
  EXPECT_TRUE(is_allowed(c, gsb_box(2)));
  EXPECT_TRUE(is_allowed(c, isotropic_box(2, q(-1, 2))));
  EXPECT_FALSE(is_allowed(c, isotropic_box(2, q(-51, 100))));
  EXPECT_TRUE(is_allowed(build_coupler(3), gsb_box(3)));
  EXPECT_TRUE(is_allowed(build_coupler(3), failure_box(3)));
}

TEST(ApplyCoupler, PrPr) {
  const auto r = swap_ends(pr_box(), pr_box());
  EXPECT_EQ(r[0].outcome, 0);
  EXPECT_EQ(r[0].probability, q(1, 3));
  EXPECT_EQ(*r[0].box, oracle::pr());
  EXPECT_EQ(r[1].outcome, 1);
  EXPECT_EQ(r[1].probability, q(2, 3));
  EXPECT_EQ(*r[1].box, oracle::failure(2));
}

TEST(ApplyCoupler, InverseRootWeights) {
  const Scalar r = Scalar::inv_sqrt2();
  const auto out = swap_ends(isotropic_box(2, r), isotropic_box(2, r));
  EXPECT_EQ(*out[0].box, oracle::isotropic(2, q(1, 2)));
}

TEST(ApplyCoupler, TwoSvetlichnyToFourParty) {
  const auto out = swap_ends(gsb_box(3), gsb_box(3));
  EXPECT_EQ(out[0].probability, q(1, 3));
  EXPECT_EQ(*out[0].box, oracle::gsb(4));
}

TEST(ApplyCoupler, ThreeWayToFourParty) {
  const BoxTable joint = tensor(tensor(gsb_box(3), pr_box()), pr_box());
  const int consumed[] = {2, 3, 5};
  const auto out = apply_coupler(build_coupler(3), joint, consumed);
  EXPECT_EQ(out[0].probability, q(1, 3));
  EXPECT_EQ(*out[0].box, oracle::gsb(4));
  EXPECT_EQ(*out[1].box, oracle::failure(4));
}

TEST(ApplyCoupler, MatchesBruteForce) {
  oracle::Sampler s(43);
  for (int i = 0; i < 40; ++i) {
    const int users = s.pick(2, 3);
    BoxTable joint;
    std::vector<int> consumed;
    for (int u = 0; u < users; ++u) {
      const int n = users == 3 ? 2 : s.pick(2, 3);
      consumed.push_back(joint.parties() + s.pick(0, n - 1));
      joint = tensor(joint, s.box(n));
    }
    const auto tables = branch_tables(build_coupler(users), joint, consumed);
    EXPECT_EQ(tables[0], oracle_branch(joint, consumed, 0));
    EXPECT_EQ(tables[1], oracle_branch(joint, consumed, 1));
  }
}

TEST(ApplyCoupler, Linearity) {
  oracle::Sampler s(47);
  const CouplerEffect c = build_coupler(2);
  const int consumed[] = {1, 2};
  for (int i = 0; i < 100; ++i) {
    const BoxTable p = tensor(s.box(2), s.box(2));
    const BoxTable r = tensor(s.box(2), s.box(2));
    const Scalar alpha = s.rational();
    const Scalar beta = s.rational();
    const BoxTable combo = oracle::build(4, [&](Word x, Word a) { return alpha * p.at(x, a) + beta * r.at(x, a); });
    const auto whole = branch_tables(c, combo, consumed);
    const auto tp = branch_tables(c, p, consumed);
    const auto tr = branch_tables(c, r, consumed);
    for (int k = 0; k < 2; ++k) {
      const auto& w = whole[static_cast<std::size_t>(k)];
      for (Word x = 0; x < 4; ++x)
        for (Word a = 0; a < 4; ++a)
          EXPECT_EQ(w.at(x, a), alpha * tp[static_cast<std::size_t>(k)].at(x, a) +
                                    beta * tr[static_cast<std::size_t>(k)].at(x, a));
    }
  }
}

TEST(ApplyCoupler, ProbabilityMatchesMarginalLaw) {
  oracle::Sampler s(53);
  for (int i = 0; i < 60; ++i) {
    const BoxTable joint = tensor(s.box(s.pick(2, 3)), s.box(2));
    std::vector<int> consumed = {s.pick(0, joint.parties() - 3), joint.parties() - 1};
    const auto out = apply_coupler(build_coupler(2), joint, consumed);
    EXPECT_EQ(out[0].probability, success_probability(build_coupler(2), marginalize(joint, consumed)));
  }
}

TEST(ApplyCoupler, IsotropicProductLaw) {
  const std::vector<Scalar> weights = {q(0), q(1, 3), q(1, 2), Scalar::inv_sqrt2(), q(9, 10), q(1)};
  for (const auto& a : weights)
    for (const auto& b : weights) {
      const auto out = swap_ends(isotropic_box(2, a), isotropic_box(2, b));
      EXPECT_EQ(out[0].probability, q(1, 3));
      EXPECT_EQ(*out[0].box, oracle::isotropic(2, a * b));
    }
}

TEST(ApplyCoupler, NoiseLawThreeBoxes) {
  const std::vector<Scalar> xs = {q(1, 2), Scalar::inv_sqrt2(), q(3, 4)};
  const BoxTable joint = tensor(tensor(isotropic_box(3, xs[0]), isotropic_box(2, xs[1])), isotropic_box(2, xs[2]));
  const int consumed[] = {0, 3, 5};
  const auto out = apply_coupler(build_coupler(3), joint, consumed);
  EXPECT_EQ(*out[0].box, oracle::isotropic(4, xs[0] * xs[1] * xs[2]));
}

TEST(ApplyCoupler, FailureBranchOfExtremalInputs) {
  for (int m = 2; m <= 4; ++m)
    for (int n = 2; n <= 3; ++n) {
      const auto out = swap_ends(gsb_box(m), gsb_box(n));
      EXPECT_EQ(*out[1].box, oracle::failure(m + n - 2)) << m << n;
    }
}

TEST(ApplyCoupler, ReorderedConsumedListInvariant) {
  const BoxTable joint = tensor(isotropic_box(3, q(1, 2)), isotropic_box(3, q(3, 4)));
  const int ab[] = {2, 3};
  const int ba[] = {3, 2};
  const auto x = apply_coupler(build_coupler(2), joint, ab);
  const auto y = apply_coupler(build_coupler(2), joint, ba);
  EXPECT_EQ(x[0].probability, y[0].probability);
  EXPECT_EQ(*x[0].box, *y[0].box);
  EXPECT_EQ(*x[1].box, *y[1].box);
}

TEST(ApplyCoupler, NonsignalingWhenAllowed) {
  oracle::Sampler s(59);
  for (int i = 0; i < 80; ++i) {
    const BoxTable joint = tensor(s.box(s.pick(2, 3)), s.box(s.pick(2, 3)));
    const int split = joint.parties() - 2;
    const std::vector<int> consumed = {s.pick(0, 1), split + s.pick(0, 1)};
    ASSERT_TRUE(is_allowed(build_coupler(2), marginalize(joint, consumed)));
    const auto out = apply_coupler(build_coupler(2), joint, consumed);
    for (const auto& b : out) {
      if (b.box) {
        EXPECT_TRUE(oracle::is_distribution(*b.box));
      }
    }
  }
}

TEST(ApplyCoupler, QuantumBoundEmergence) {
  const Scalar r = Scalar::inv_sqrt2();
  for (const Scalar& xi : {q(1, 2), q(7, 10), r, q(71, 100), q(3, 4), q(1)}) {
    const auto out = swap_ends(isotropic_box(2, xi), isotropic_box(2, xi));
    const bool nonlocal = oracle::gsi(*out[0].box) > Scalar(2);
    EXPECT_EQ(nonlocal, xi * xi > q(1, 2));
    EXPECT_EQ(nonlocal, oracle::gsi(oracle::isotropic(2, xi)) > Scalar(0, 2));
  }
}

TEST(ApplyCoupler, AntiPrGivesNegatedWeight) {
  for (const Scalar& xi : {q(1), q(1, 2), Scalar::inv_sqrt2(), q(1, 3)}) {
    const auto out = swap_ends(anti_pr_box(), isotropic_box(2, xi));
    EXPECT_EQ(*out[0].box, oracle::isotropic(2, -xi));
    if (xi != q(1, 2)) {
      EXPECT_NE(*out[0].box, oracle::isotropic(2, Scalar(1) - xi));
    }
  }
}

TEST(ApplyCoupler, CorrelatorFormFailsBeyondTwo) {
  const BoxTable joint = tensor(tensor(pr_box(), pr_box()), pr_box());
  const int consumed[] = {1, 3, 5};
  const auto literal = branch_tables(build_coupler(3, CouplerForm::gsi_correlator), joint, consumed);
  Scalar mass;
  for (Word a = 0; a < 8; ++a) mass += literal[0].at(0, a);
  EXPECT_NE(literal[0].scaled(mass.inverse()), oracle::sb());
  const auto swap = apply_coupler(build_coupler(3), joint, consumed);
  EXPECT_EQ(*swap[0].box, oracle::sb());
}

TEST(ApplyCoupler, CorrelatedSvetlichnyPair) {
  const int consumed[] = {1, 2};
  const auto tables = branch_tables(build_coupler(2), sb_box(), consumed);
  Scalar mass;
  for (Word a = 0; a < 2; ++a) mass += tables[0].at(0, a);
  EXPECT_EQ(mass, q(1, 3));
  EXPECT_EQ(tables[0].at(0, 1), q(-1, 6));
  try {
    apply_coupler(build_coupler(2), sb_box(), consumed);
    FAIL() << "expected CouplerInvalid";
  } catch (const CouplerInvalid& e) {
    EXPECT_EQ(e.outcome(), 0);
    EXPECT_EQ(e.table().parties(), 1);
  }
}

TEST(ApplyCoupler, DisallowedInputThrows) {
  const int consumed[] = {0, 1};
  EXPECT_THROW(apply_coupler(build_coupler(2), anti_pr_box(), consumed), CouplerInvalid);
}

TEST(ApplyCoupler, ConsumedErrors) {
  const BoxTable joint = tensor(pr_box(), pr_box());
  const int one[] = {1};
  const int twice[] = {1, 1};
  const int range[] = {1, 4};
  EXPECT_THROW(apply_coupler(build_coupler(2), joint, one), BoxError);
  EXPECT_THROW(apply_coupler(build_coupler(2), joint, twice), BoxError);
  EXPECT_THROW(apply_coupler(build_coupler(2), joint, range), BoxError);
  EXPECT_EQ(surviving_parties(4, std::vector<int>{1, 2}), (std::vector<int>{0, 3}));
}

TEST(ApplyCoupler, WholeBoxConsumed) {
  const int consumed[] = {0, 1};
  const auto out = apply_coupler(build_coupler(2), pr_box(), consumed);
  EXPECT_EQ(out[0].probability, Scalar(1));
  EXPECT_EQ(out[0].box->parties(), 0);
  EXPECT_EQ(out[1].probability, Scalar(0));
  EXPECT_FALSE(out[1].box.has_value());
}
