#include "nlswap/box.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bits.hpp"

namespace nlswap {

bool ValidationReport::ok() const {
  return normalized && nonnegative &&
         std::all_of(nonsignaling.begin(), nonsignaling.end(), [](bool b) { return b; });
}

std::vector<std::string> ValidationReport::failures() const {
  std::vector<std::string> out;
  if (!normalized) out.emplace_back("not normalized: some input's outputs do not sum to 1");
  if (!nonnegative) out.emplace_back("negative entry present");
  for (std::size_t i = 0; i < nonsignaling.size(); ++i) {
    if (!nonsignaling[i]) out.push_back("party " + std::to_string(i + 1) + " signals");
  }
  return out;
}

namespace {

void check_party_count(int parties) {
  if (parties < 0) throw BoxError("negative party count");
  if (parties > kMaxParties) {
    throw BoxError("box with " + std::to_string(parties) + " parties exceeds the dense-table cap of " +
                   std::to_string(kMaxParties) + "; apply couplers before tensoring to keep tables small");
  }
}

std::size_t table_size(int parties) { return std::size_t{1} << (2 * parties); }

}  // namespace

BoxTable::BoxTable(int parties, std::vector<Scalar> probs, Kind kind)
    : parties_(parties), probs_(std::move(probs)), kind_(kind) {
  check_party_count(parties_);
  if (probs_.size() != table_size(parties_)) {
    throw BoxError("table for " + std::to_string(parties_) + " parties needs " +
                   std::to_string(table_size(parties_)) + " entries, got " + std::to_string(probs_.size()));
  }
  if (kind_ == Kind::distribution) {
    const ValidationReport report = validate(*this);
    if (!report.ok()) {
      std::string msg = "invalid box:";
      for (const auto& f : report.failures()) msg += " " + f + ";";
      throw BoxError(msg);
    }
  }
}

BoxTable BoxTable::zeros(int parties) {
  check_party_count(parties);
  return BoxTable(parties, std::vector<Scalar>(table_size(parties)), Kind::quasi);
}

BoxTable BoxTable::trusted(int parties, std::vector<Scalar> probs) {
  BoxTable table(parties, std::move(probs), Kind::quasi);
  table.kind_ = Kind::distribution;
  return table;
}

BoxTable BoxTable::scaled(const Scalar& factor) const {
  std::vector<Scalar> out(probs_);
  for (auto& p : out) p *= factor;
  return BoxTable(parties_, std::move(out), Kind::quasi);
}

std::string to_string(BoxKind kind) {
  switch (kind) {
    case BoxKind::pr: return "pr";
    case BoxKind::anti_pr: return "anti_pr";
    case BoxKind::mixed: return "mixed";
    case BoxKind::gsb: return "gsb";
    case BoxKind::sb: return "sb";
    case BoxKind::isotropic: return "isotropic";
    case BoxKind::failure: return "failure";
  }
  return "?";
}

BoxKind parse_box_kind(const std::string& name) {
  for (BoxKind k : {BoxKind::pr, BoxKind::anti_pr, BoxKind::mixed, BoxKind::gsb, BoxKind::sb,
                    BoxKind::isotropic, BoxKind::failure}) {
    if (to_string(k) == name) return k;
  }
  throw BoxError("unknown box kind '" + name + "'");
}

namespace {

// XOR over unordered pairs j<k of x_j x_k.
int pair_parity(Word inputs, int parties) {
  int acc = 0;
  for (int j = 0; j < parties; ++j) {
    for (int k = j + 1; k < parties; ++k) acc ^= bit_of(inputs, j) & bit_of(inputs, k);
  }
  return acc;
}

BoxTable parity_box(int parties, int offset) {
  check_party_count(parties);
  const Word words = Word{1} << parties;
  const Scalar weight = Scalar::pow2(1 - parties);
  std::vector<Scalar> probs(table_size(parties));
  for (Word x = 0; x < words; ++x) {
    const int target = pair_parity(x, parties) ^ offset;
    for (Word a = 0; a < words; ++a) {
      if (parity(a) == target) probs[(static_cast<std::size_t>(x) << parties) | a] = weight;
    }
  }
  return BoxTable(parties, std::move(probs));
}

void require_at_least_two(int parties) {
  if (parties < 2) throw BoxError("named boxes need at least 2 parties");
  check_party_count(parties);
}

}  // namespace

BoxTable pr_box() { return parity_box(2, 0); }
BoxTable anti_pr_box() { return parity_box(2, 1); }
BoxTable sb_box() { return parity_box(3, 0); }

BoxTable gsb_box(int parties) {
  require_at_least_two(parties);
  return parity_box(parties, 0);
}

BoxTable mixed_box(int parties) {
  check_party_count(parties);
  return BoxTable(parties, std::vector<Scalar>(table_size(parties), Scalar::pow2(-parties)));
}

BoxTable isotropic_box(int parties, const Scalar& xi) {
  require_at_least_two(parties);
  if (xi < Scalar(-1) || xi > Scalar(1)) throw BoxError("isotropic weight " + xi.to_string() + " outside [-1, 1]");
  const std::pair<Scalar, BoxTable> terms[] = {{xi, gsb_box(parties)}, {Scalar(1) - xi, mixed_box(parties)}};
  return mix(terms);
}

BoxTable failure_box(int parties) {
  require_at_least_two(parties);
  const std::pair<Scalar, BoxTable> terms[] = {{Scalar::rational(3, 2), mixed_box(parties)},
                                               {Scalar::rational(-1, 2), gsb_box(parties)}};
  return mix(terms);
}

BoxTable make_box(BoxKind kind, int parties, std::optional<Scalar> xi) {
  require_at_least_two(parties);
  if (xi.has_value() != (kind == BoxKind::isotropic)) {
    throw BoxError(kind == BoxKind::isotropic ? "isotropic box needs a weight xi"
                                              : "weight xi is only accepted for isotropic boxes");
  }
  switch (kind) {
    case BoxKind::pr:
    case BoxKind::anti_pr:
      if (parties != 2) throw BoxError(to_string(kind) + " box is bipartite");
      return kind == BoxKind::pr ? pr_box() : anti_pr_box();
    case BoxKind::sb:
      if (parties != 3) throw BoxError("sb box is tripartite");
      return sb_box();
    case BoxKind::mixed: return mixed_box(parties);
    case BoxKind::gsb: return gsb_box(parties);
    case BoxKind::isotropic: return isotropic_box(parties, *xi);
    case BoxKind::failure: return failure_box(parties);
  }
  throw BoxError("unhandled box kind");
}

BoxTable deterministic_box(std::span<const LocalResponse> responses) {
  const int n = static_cast<int>(responses.size());
  check_party_count(n);
  const Word words = Word{1} << n;
  std::vector<Scalar> probs(table_size(n));
  for (Word x = 0; x < words; ++x) {
    Word a = 0;
    for (int i = 0; i < n; ++i) {
      int out = 0;
      switch (responses[static_cast<std::size_t>(i)]) {
        case LocalResponse::zero: out = 0; break;
        case LocalResponse::one: out = 1; break;
        case LocalResponse::copy: out = bit_of(x, i); break;
        case LocalResponse::flip: out = 1 - bit_of(x, i); break;
      }
      a |= static_cast<Word>(out) << i;
    }
    probs[(static_cast<std::size_t>(x) << n) | a] = Scalar(1);
  }
  return BoxTable(n, std::move(probs));
}

BoxTable tensor(const BoxTable& a, const BoxTable& b) {
  const int na = a.parties();
  const int nb = b.parties();
  check_party_count(na + nb);
  const int n = na + nb;
  std::vector<Scalar> probs(table_size(n));
  for (Word xa = 0; xa < a.words(); ++xa) {
    for (Word aa = 0; aa < a.words(); ++aa) {
      const Scalar& pa = a.at(xa, aa);
      if (pa.is_zero()) continue;
      for (Word xb = 0; xb < b.words(); ++xb) {
        const Word x = xa | (xb << na);
        for (Word ab = 0; ab < b.words(); ++ab) {
          const Scalar& pb = b.at(xb, ab);
          if (pb.is_zero()) continue;
          probs[(static_cast<std::size_t>(x) << n) | (aa | (ab << na))] = pa * pb;
        }
      }
    }
  }
  if (a.quasi() || b.quasi()) return BoxTable(n, std::move(probs), BoxTable::Kind::quasi);
  return BoxTable::trusted(n, std::move(probs));
}

namespace {

// Result of a validity-preserving operation on `box`.
BoxTable same_kind(const BoxTable& box, int parties, std::vector<Scalar> probs) {
  if (box.quasi()) return BoxTable(parties, std::move(probs), BoxTable::Kind::quasi);
  return BoxTable::trusted(parties, std::move(probs));
}

std::vector<int> complement(int parties, std::span<const int> keep) {
  std::vector<bool> kept(static_cast<std::size_t>(parties), false);
  for (int p : keep) {
    if (p < 0 || p >= parties) throw BoxError("party index " + std::to_string(p) + " out of range");
    if (kept[static_cast<std::size_t>(p)]) throw BoxError("party " + std::to_string(p) + " listed twice");
    kept[static_cast<std::size_t>(p)] = true;
  }
  std::vector<int> rest;
  for (int p = 0; p < parties; ++p) {
    if (!kept[static_cast<std::size_t>(p)]) rest.push_back(p);
  }
  return rest;
}

// Marginal over `keep` with the discarded parties' inputs fixed to `dropped_inputs`
// (bit k belongs to party drop[k]).
std::vector<Scalar> marginal_at(const BoxTable& box, std::span<const int> keep, std::span<const int> drop,
                                Word dropped_inputs) {
  const int nk = static_cast<int>(keep.size());
  const Word kept_words = Word{1} << nk;
  const Word drop_words = Word{1} << drop.size();
  std::vector<Scalar> out(std::size_t{1} << (2 * nk));
  const Word base_inputs = bits::scatter(dropped_inputs, drop);
  for (Word xk = 0; xk < kept_words; ++xk) {
    const Word x = base_inputs | bits::scatter(xk, keep);
    for (Word ak = 0; ak < kept_words; ++ak) {
      Scalar& acc = out[(static_cast<std::size_t>(xk) << nk) | ak];
      const Word a_kept = bits::scatter(ak, keep);
      for (Word ad = 0; ad < drop_words; ++ad) acc += box.at(x, a_kept | bits::scatter(ad, drop));
    }
  }
  return out;
}

}  // namespace

BoxTable marginalize(const BoxTable& box, std::span<const int> keep, const std::map<int, int>& fixed_inputs) {
  const std::vector<int> drop = complement(box.parties(), keep);
  Word reference = 0;
  for (const auto& [party, bit] : fixed_inputs) {
    auto it = std::find(drop.begin(), drop.end(), party);
    if (it == drop.end()) throw BoxError("fixed input given for kept or unknown party " + std::to_string(party));
    if (bit != 0 && bit != 1) throw BoxError("input bits must be 0 or 1");
    reference |= static_cast<Word>(bit) << (it - drop.begin());
  }
  const Word drop_words = Word{1} << drop.size();
  std::vector<std::vector<Scalar>> seen(drop_words);
  // Walk offsets from the reference; each offset is compared with the offset
  // that has its lowest set bit cleared, so one failing edge names a party.
  for (Word offset = 0; offset < drop_words; ++offset) {
    seen[offset] = marginal_at(box, keep, drop, reference ^ offset);
    if (offset == 0) continue;
    const Word low = offset & (~offset + 1);
    if (seen[offset] != seen[offset ^ low]) {
      const int party = drop[static_cast<std::size_t>(__builtin_ctz(low))];
      throw SignalingError(party, "marginal depends on the input of discarded party " + std::to_string(party + 1));
    }
  }
  return same_kind(box, static_cast<int>(keep.size()), std::move(seen[0]));
}

BoxTable marginalize_averaged(const BoxTable& box, std::span<const int> keep) {
  const std::vector<int> drop = complement(box.parties(), keep);
  const Word drop_words = Word{1} << drop.size();
  std::vector<Scalar> acc(std::size_t{1} << (2 * keep.size()));
  for (Word d = 0; d < drop_words; ++d) {
    const auto part = marginal_at(box, keep, drop, d);
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += part[k];
  }
  const Scalar scale = Scalar::pow2(-static_cast<int>(drop.size()));
  for (auto& v : acc) v *= scale;
  return same_kind(box, static_cast<int>(keep.size()), std::move(acc));
}

BoxTable permute(const BoxTable& box, std::span<const int> order) {
  if (static_cast<int>(order.size()) != box.parties() || !complement(box.parties(), order).empty()) {
    throw BoxError("permutation must list every party exactly once");
  }
  const int n = box.parties();
  std::vector<Scalar> probs(table_size(n));
  for (Word x = 0; x < box.words(); ++x) {
    const Word ox = bits::scatter(x, order);
    for (Word a = 0; a < box.words(); ++a) {
      probs[(static_cast<std::size_t>(x) << n) | a] = box.at(ox, bits::scatter(a, order));
    }
  }
  return same_kind(box, n, std::move(probs));
}

BoxTable mix(std::span<const std::pair<Scalar, BoxTable>> terms, BoxTable::Kind kind) {
  if (terms.empty()) throw BoxError("mix needs at least one term");
  const int n = terms.front().second.parties();
  Scalar total;
  std::vector<Scalar> probs(table_size(n));
  for (const auto& [weight, table] : terms) {
    if (table.parties() != n) throw BoxError("mix terms must share the party count");
    total += weight;
    if (weight.is_zero()) continue;
    const auto src = table.entries();
    for (std::size_t k = 0; k < probs.size(); ++k) {
      if (!src[k].is_zero()) probs[k] += weight * src[k];
    }
  }
  if (total != Scalar(1)) throw BoxError("mix weights sum to " + total.to_string() + ", not 1");
  return BoxTable(n, std::move(probs), kind);
}

BoxTable merge_parties(const BoxTable& box, int i, int j) {
  const int n = box.parties();
  if (i < 0 || j < 0 || i >= n || j >= n) throw BoxError("merge_parties: party index out of range");
  if (i == j) throw BoxError("merge_parties: parties must differ");
  const int lo = std::min(i, j);
  const int hi = std::max(i, j);
  std::vector<int> survivors;  // new position k <- old party survivors[k]
  for (int p = 0; p < n; ++p) {
    if (p != hi) survivors.push_back(p);
  }
  const int m = n - 1;
  const Word words = Word{1} << m;
  std::vector<Scalar> probs(table_size(m));
  for (Word x = 0; x < words; ++x) {
    Word ox = bits::scatter(x, survivors);
    ox |= static_cast<Word>(bit_of(ox, lo)) << hi;
    for (Word a = 0; a < words; ++a) {
      const Word base = bits::scatter(a, survivors) & ~(Word{1} << lo);
      const int merged = bit_of(a, lo);  // survivors keeps lo at position lo
      Scalar acc;
      for (int a_hi = 0; a_hi < 2; ++a_hi) {
        const int a_lo = merged ^ a_hi;
        acc += box.at(ox, base | (static_cast<Word>(a_lo) << lo) | (static_cast<Word>(a_hi) << hi));
      }
      probs[(static_cast<std::size_t>(x) << m) | a] = std::move(acc);
    }
  }
  return same_kind(box, m, std::move(probs));
}

ValidationReport validate(const BoxTable& box) {
  ValidationReport report;
  const int n = box.parties();
  const Word words = box.words();
  report.nonsignaling.assign(static_cast<std::size_t>(n), true);
  for (const auto& p : box.entries()) {
    if (p.sign() < 0) {
      report.nonnegative = false;
      break;
    }
  }
  const Scalar one(1);
  for (Word x = 0; x < words; ++x) {
    Scalar sum;
    for (Word a = 0; a < words; ++a) sum += box.at(x, a);
    if (sum != one) {
      report.normalized = false;
      break;
    }
  }
  Scalar lhs;
  Scalar rhs;
  for (int i = 0; i < n; ++i) {
    const Word bit = Word{1} << i;
    bool ok = true;
    for (Word x = 0; x < words && ok; ++x) {
      if (x & bit) continue;
      for (Word a = 0; a < words && ok; ++a) {
        if (a & bit) continue;
        lhs = box.at(x, a);
        lhs += box.at(x, a | bit);
        rhs = box.at(x | bit, a);
        rhs += box.at(x | bit, a | bit);
        ok = lhs == rhs;
      }
    }
    report.nonsignaling[static_cast<std::size_t>(i)] = ok;
  }
  return report;
}

}  // namespace nlswap
