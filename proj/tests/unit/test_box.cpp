#include <gtest/gtest.h>

#include <numeric>

#include "nlswap/box.hpp"
#include "oracle.hpp"

using namespace nlswap;

namespace {

Scalar q(long n, long d = 1) { return Scalar::rational(n, d); }

int count_value(const BoxTable& box, const Scalar& v) {
  int k = 0;
  for (const auto& p : box.entries()) k += p == v;
  return k;
}

}  // namespace

TEST(BoxConstruct, SvetlichnyPattern) {
  const BoxTable g3 = gsb_box(3);
  EXPECT_EQ(g3, oracle::sb());
  EXPECT_EQ(count_value(g3, q(1, 4)), 32);
  EXPECT_EQ(count_value(g3, q(0)), 32);
  EXPECT_EQ(make_box(BoxKind::gsb, 3), sb_box());
}

TEST(BoxConstruct, MixedIsUniform) {
  const BoxTable u = make_box(BoxKind::mixed, 2);
  EXPECT_EQ(u.entries().size(), 16u);
  EXPECT_EQ(count_value(u, q(1, 4)), 16);
}

TEST(BoxConstruct, IsotropicAtOneIsPr) {
  EXPECT_EQ(make_box(BoxKind::isotropic, 2, Scalar(1)), pr_box());
  EXPECT_EQ(pr_box(), oracle::pr());
  EXPECT_EQ(anti_pr_box(), oracle::anti_pr());
}

TEST(BoxConstruct, FailureGolden) {
  // rows x = 00, 01, 10, 11; columns a = 00, 01, 10, 11 (party 1 is the low bit)
  const long golden[4][4] = {{1, 3, 3, 1}, {1, 3, 3, 1}, {1, 3, 3, 1}, {3, 1, 1, 3}};
  const BoxTable f = make_box(BoxKind::failure, 2);
  for (Word x = 0; x < 4; ++x)
    for (Word a = 0; a < 4; ++a) EXPECT_EQ(f.at(x, a), q(golden[x][a], 8)) << x << "," << a;
  EXPECT_EQ(f, oracle::failure(2));
}

TEST(BoxConstruct, GsbMatchesPairFormula) {
  for (int n = 2; n <= 6; ++n) {
    EXPECT_EQ(gsb_box(n), oracle::gsb(n)) << n;
    EXPECT_EQ(failure_box(n), oracle::failure(n)) << n;
    EXPECT_EQ(mixed_box(n), oracle::uniform(n)) << n;
  }
  EXPECT_EQ(gsb_box(2), pr_box());
  EXPECT_EQ(gsb_box(3), sb_box());
}

TEST(BoxConstruct, EveryConstructorValidates) {
  for (int n = 2; n <= 5; ++n) {
    for (auto kind : {BoxKind::mixed, BoxKind::gsb, BoxKind::failure}) {
      EXPECT_TRUE(validate(make_box(kind, n)).ok()) << to_string(kind) << n;
    }
    for (const Scalar& xi : {q(-1), q(-1, 2), q(0), Scalar::inv_sqrt2(), q(1)}) {
      EXPECT_TRUE(oracle::is_distribution(isotropic_box(n, xi)));
    }
  }
  EXPECT_TRUE(validate(pr_box()).ok());
  EXPECT_TRUE(validate(anti_pr_box()).ok());
  EXPECT_TRUE(validate(sb_box()).ok());
}

TEST(BoxConstruct, IsotropicAffineInWeight) {
  for (int n = 2; n <= 4; ++n) {
    const Scalar a = q(1, 5);
    const Scalar b = Scalar::inv_sqrt2();
    const Scalar t = q(1, 3);
    const BoxTable mid = isotropic_box(n, (Scalar(1) - t) * a + t * b);
    const BoxTable pa = isotropic_box(n, a);
    const BoxTable pb = isotropic_box(n, b);
    for (std::size_t k = 0; k < mid.entries().size(); ++k) {
      EXPECT_EQ(mid.entries()[k], (Scalar(1) - t) * pa.entries()[k] + t * pb.entries()[k]);
    }
    EXPECT_EQ(isotropic_box(n, b), oracle::isotropic(n, b));
  }
}

TEST(BoxConstruct, Errors) {
  EXPECT_THROW(make_box(BoxKind::isotropic, 2), BoxError);
  EXPECT_THROW(make_box(BoxKind::isotropic, 2, q(3, 2)), BoxError);
  EXPECT_THROW(make_box(BoxKind::gsb, 1), BoxError);
  EXPECT_THROW(make_box(BoxKind::sb, 2), BoxError);
  EXPECT_THROW(make_box(BoxKind::pr, 3), BoxError);
  EXPECT_THROW(make_box(BoxKind::gsb, 11), BoxError);
  EXPECT_THROW(parse_box_kind("nope"), BoxError);
  EXPECT_EQ(parse_box_kind("anti_pr"), BoxKind::anti_pr);
  EXPECT_THROW(BoxTable(2, std::vector<Scalar>(15)), BoxError);
  std::vector<Scalar> bad(16, q(1, 4));
  bad[0] = q(-1, 4);
  EXPECT_THROW(BoxTable(2, bad), BoxError);
  EXPECT_NO_THROW(BoxTable(2, bad, BoxTable::Kind::quasi));
}

TEST(BoxConstruct, Deterministic) {
  const LocalResponse r[] = {LocalResponse::copy, LocalResponse::one};
  const BoxTable d = deterministic_box(r);
  EXPECT_EQ(d, oracle::deterministic({2, 1}));
  EXPECT_TRUE(validate(d).ok());
}

TEST(Tensor, PrTimesPr) {
  const BoxTable t = tensor(pr_box(), pr_box());
  EXPECT_EQ(t.parties(), 4);
  EXPECT_EQ(t.at(0, 0), q(1, 4));
  EXPECT_EQ(t, oracle::product(oracle::pr(), oracle::pr()));
}

TEST(Tensor, UniformTimesUniform) { EXPECT_EQ(tensor(mixed_box(2), mixed_box(2)), mixed_box(4)); }

TEST(Tensor, MarginalRecoversFactor) {
  const BoxTable t = tensor(gsb_box(3), pr_box());
  const int keep[] = {0, 1, 2};
  EXPECT_EQ(marginalize(t, keep), gsb_box(3));
  const int keep_pr[] = {3, 4};
  EXPECT_EQ(marginalize(t, keep_pr), pr_box());
}

TEST(Tensor, TooLarge) { EXPECT_THROW(tensor(mixed_box(6), mixed_box(5)), BoxError); }

TEST(Marginalize, PrSingleParty) {
  const int keep[] = {0};
  const BoxTable m = marginalize(pr_box(), keep);
  EXPECT_EQ(m.parties(), 1);
  for (const auto& p : m.entries()) EXPECT_EQ(p, q(1, 2));
}

TEST(Marginalize, GsbSinglePartyUniform) {
  for (int n = 2; n <= 5; ++n) {
    for (int p = 0; p < n; ++p) {
      const int keep[] = {p};
      EXPECT_EQ(marginalize(gsb_box(n), keep), mixed_box(1));
    }
  }
}

TEST(Marginalize, BobsPartiesOfTwoPrBoxes) {
  const int keep[] = {1, 2};
  EXPECT_EQ(marginalize(tensor(pr_box(), pr_box()), keep), mixed_box(2));
}

TEST(Marginalize, FixedInputsAndOrder) {
  const int keep[] = {2, 0};
  const BoxTable t = tensor(pr_box(), mixed_box(1));
  const BoxTable m = marginalize(t, keep, {{1, 1}});
  EXPECT_EQ(m, mixed_box(2));
  EXPECT_THROW(marginalize(t, keep, {{0, 1}}), BoxError);
}

TEST(Marginalize, SignalingNamesParty) {
  // party 1 outputs party 2's input: party 2 signals
  const BoxTable s = oracle::build(2, [](Word x, Word a) {
    return (a & 1U) == ((x >> 1) & 1U) ? q(1, 2) : Scalar(0);
  });
  const ValidationReport r = validate(s);
  EXPECT_TRUE(r.normalized);
  EXPECT_TRUE(r.nonnegative);
  EXPECT_TRUE(r.nonsignaling[0]);
  EXPECT_FALSE(r.nonsignaling[1]);
  const int keep[] = {0};
  try {
    marginalize(s, keep);
    FAIL() << "expected SignalingError";
  } catch (const SignalingError& e) {
    EXPECT_EQ(e.party(), 1);
  }
  EXPECT_EQ(marginalize_averaged(s, keep).parties(), 1);
}

TEST(Mix, SvetlichnyBranchBox) {
  const std::pair<Scalar, BoxTable> terms[] = {{q(3, 2), mixed_box(3)}, {q(-1, 2), sb_box()}};
  const BoxTable m = mix(terms);
  EXPECT_EQ(count_value(m, q(3, 16)) + count_value(m, q(1, 16)), 64);
  EXPECT_EQ(count_value(m, q(1, 16)), 32);
  EXPECT_TRUE(oracle::is_distribution(m));
}

TEST(Mix, HalfPrHalfUniform) {
  const std::pair<Scalar, BoxTable> terms[] = {{q(1, 2), pr_box()}, {q(1, 2), mixed_box(2)}};
  EXPECT_EQ(mix(terms), isotropic_box(2, q(1, 2)));
}

TEST(Mix, SingleTerm) {
  const std::pair<Scalar, BoxTable> terms[] = {{q(1), gsb_box(4)}};
  EXPECT_EQ(mix(terms), gsb_box(4));
}

TEST(Mix, Errors) {
  const std::pair<Scalar, BoxTable> short_weight[] = {{q(1, 2), pr_box()}};
  EXPECT_THROW(mix(short_weight), BoxError);
  const std::pair<Scalar, BoxTable> arity[] = {{q(1, 2), pr_box()}, {q(1, 2), sb_box()}};
  EXPECT_THROW(mix(arity), BoxError);
  const std::pair<Scalar, BoxTable> invalid[] = {{q(2), pr_box()}, {q(-1), mixed_box(2)}};
  EXPECT_THROW(mix(invalid), BoxError);
  EXPECT_NO_THROW(mix(invalid, BoxTable::Kind::quasi));
}

TEST(Validate, Gsb5Passes) {
  const ValidationReport r = validate(gsb_box(5));
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.failures().empty());
  EXPECT_EQ(r.nonsignaling.size(), 5u);
}

TEST(Validate, PerturbedEntryBreaksNormalization) {
  const BoxTable pr = pr_box();
  std::vector<Scalar> p(pr.entries().begin(), pr.entries().end());
  p[0] += q(1, 100);
  const ValidationReport r = validate(BoxTable(2, p, BoxTable::Kind::quasi));
  EXPECT_FALSE(r.normalized);
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.failures().empty());
}

TEST(Validate, NineEighthsBranchBox) {
  const std::pair<Scalar, BoxTable> terms[] = {{q(9, 8), mixed_box(3)}, {q(-1, 8), sb_box()}};
  const BoxTable m = mix(terms, BoxTable::Kind::quasi);
  EXPECT_TRUE(validate(m).ok());
  EXPECT_EQ(count_value(m, q(7, 64)), 32);
  EXPECT_EQ(count_value(m, q(9, 64)), 32);
}

TEST(Merge, PrPairWiring) {
  const BoxTable m = merge_parties(tensor(pr_box(), pr_box()), 0, 2);
  EXPECT_EQ(m.parties(), 3);
  EXPECT_TRUE(oracle::is_distribution(m));
}

TEST(Merge, UniformXorIsUniform) { EXPECT_EQ(merge_parties(mixed_box(2), 0, 1), mixed_box(1)); }

TEST(Merge, MatchesXorDefinition) {
  // merging the two ends of a PR box: output a1 xor a2 = x*x = x
  const BoxTable m = merge_parties(pr_box(), 1, 0);
  EXPECT_EQ(m, oracle::deterministic({2}));
}

TEST(Merge, PreservesValidityRandom) {
  oracle::Sampler s(21);
  for (int i = 0; i < 100; ++i) {
    const BoxTable b = tensor(s.box(s.pick(2, 3)), s.box(2));
    const int p = s.pick(0, b.parties() - 1);
    int r = s.pick(0, b.parties() - 2);
    if (r >= p) ++r;
    EXPECT_TRUE(oracle::is_distribution(merge_parties(b, p, r)));
  }
  EXPECT_THROW(merge_parties(pr_box(), 0, 0), BoxError);
  EXPECT_THROW(merge_parties(pr_box(), 0, 2), BoxError);
}

TEST(Permute, ReordersParties) {
  const BoxTable d = oracle::deterministic({0, 1, 2});
  const int order[] = {2, 0, 1};
  EXPECT_EQ(permute(d, order), oracle::deterministic({2, 0, 1}));
  const int bad[] = {0, 0, 1};
  EXPECT_THROW(permute(d, bad), BoxError);
}

TEST(Properties, MarginalOfProductRandom) {
  oracle::Sampler s(3);
  for (int i = 0; i < 100; ++i) {
    const BoxTable p = s.box(s.pick(2, 3)).as_distribution();
    const BoxTable r = s.box(2).as_distribution();
    std::vector<int> keep(static_cast<std::size_t>(p.parties()));
    std::iota(keep.begin(), keep.end(), 0);
    EXPECT_EQ(marginalize(tensor(p, r), keep), p);
  }
}

TEST(BoxTable, ZeroPartyAndScaling) {
  const BoxTable unit;
  EXPECT_EQ(unit.parties(), 0);
  EXPECT_EQ(unit.at(0, 0), Scalar(1));
  EXPECT_EQ(tensor(unit, pr_box()), pr_box());
  const BoxTable half = pr_box().scaled(q(1, 2));
  EXPECT_TRUE(half.quasi());
  EXPECT_EQ(half.at(0, 0), q(1, 4));
  EXPECT_THROW(half.as_distribution(), BoxError);
}
