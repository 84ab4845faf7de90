#include "nlswap/coupler.hpp"

#include <algorithm>
#include <bit>

#include "bits.hpp"

namespace nlswap {

BellFunctional swap_coefficients(int arity) {
  const BellFunctional gsi = gsi_coefficients(arity);
  const Word words = Word{1} << arity;
  BellFunctional dual{arity, std::vector<Scalar>(words)};
  for (Word y = 0; y < words; ++y) {
    long acc = 0;
    for (Word s = 0; s < words; ++s) {
      const long c = gsi.coeffs[s].rational_part().get_num().get_si();
      acc += (popcount(y & s) % 2) ? -c : c;
    }
    dual.coeffs[y] = Scalar::rational(acc, 2);
  }
  return dual;
}

CouplerEffect::CouplerEffect(int arity, CouplerForm form)
    : arity_(arity),
      form_(form),
      functional_(form == CouplerForm::swap ? swap_coefficients(arity) : gsi_coefficients(arity)) {
  if (arity < 2) throw BoxError("coupler arity must be at least 2");
  if (arity > kMaxParties) throw BoxError("coupler arity exceeds the table cap");
  const Word words = Word{1} << arity;
  const Scalar uniform = Scalar::pow2(-arity);
  const Scalar scale = uniform / Scalar(3);
  weights_.resize(std::size_t{2} << (2 * arity));
  for (Word y = 0; y < words; ++y) {
    const Scalar& d = functional_.coeffs[y];
    for (Word b = 0; b < words; ++b) {
      const Scalar signed_d = parity(b) ? -d : d;
      Scalar success = scale * (Scalar(1) + Scalar(2) * signed_d);
      weights_[index(1, b, y)] = uniform - success;
      weights_[index(0, b, y)] = std::move(success);
    }
  }
}

CouplerEffect build_coupler(int arity, CouplerForm form) { return CouplerEffect(arity, form); }

Scalar success_probability(const CouplerEffect& coupler, const BoxTable& bob_box) {
  if (bob_box.parties() != coupler.arity()) {
    throw BoxError("coupler of arity " + std::to_string(coupler.arity()) + " applied to a " +
                   std::to_string(bob_box.parties()) + "-party box");
  }
  Scalar p;
  for (Word y = 0; y < bob_box.words(); ++y) {
    for (Word b = 0; b < bob_box.words(); ++b) {
      const Scalar& entry = bob_box.at(y, b);
      if (!entry.is_zero()) p += coupler.weight(0, b, y) * entry;
    }
  }
  return p;
}

bool is_allowed(const CouplerEffect& coupler, const BoxTable& bob_box) {
  const Scalar p = success_probability(coupler, bob_box);
  return p >= Scalar(0) && p <= Scalar(1);
}

std::vector<int> surviving_parties(int parties, std::span<const int> consumed) {
  std::vector<int> rest;
  for (int p = 0; p < parties; ++p) {
    if (std::find(consumed.begin(), consumed.end(), p) == consumed.end()) rest.push_back(p);
  }
  return rest;
}

namespace {

void check_consumed(const CouplerEffect& coupler, const BoxTable& joint, std::span<const int> consumed) {
  if (static_cast<int>(consumed.size()) != coupler.arity()) {
    throw BoxError("coupler of arity " + std::to_string(coupler.arity()) + " given " +
                   std::to_string(consumed.size()) + " parties");
  }
  for (std::size_t k = 0; k < consumed.size(); ++k) {
    const int p = consumed[k];
    if (p < 0 || p >= joint.parties()) throw BoxError("consumed party " + std::to_string(p) + " out of range");
    if (std::find(consumed.begin(), consumed.begin() + static_cast<std::ptrdiff_t>(k), p) !=
        consumed.begin() + static_cast<std::ptrdiff_t>(k)) {
      throw BoxError("consumed party " + std::to_string(p) + " listed twice");
    }
  }
}

}  // namespace

std::array<BoxTable, 2> branch_tables(const CouplerEffect& coupler, const BoxTable& joint,
                                      std::span<const int> consumed) {
  check_consumed(coupler, joint, consumed);
  const std::vector<int> rest = surviving_parties(joint.parties(), consumed);
  const int m = static_cast<int>(rest.size());
  const Word rest_words = Word{1} << m;
  const Word bob_words = Word{1} << coupler.arity();
  std::array<std::vector<Scalar>, 2> tables;
  for (auto& t : tables) t.resize(std::size_t{1} << (2 * m));

  // Weights depend on b only through (-1)^{|b|}: sum over b first, then
  // apply 2 D_y once per input word.
  const auto& d = coupler.success_functional().coeffs;
  const Scalar success_scale = Scalar::pow2(-coupler.arity()) / Scalar(3);
  const Scalar uniform_scale = Scalar::pow2(-coupler.arity());
  Scalar total;
  Scalar signed_total;
  Scalar even;
  Scalar odd;
  for (Word x = 0; x < rest_words; ++x) {
    const Word x_rest = bits::scatter(x, rest);
    for (Word a = 0; a < rest_words; ++a) {
      const Word a_rest = bits::scatter(a, rest);
      total = Scalar();
      signed_total = Scalar();
      for (Word y = 0; y < bob_words; ++y) {
        const Word inputs = x_rest | bits::scatter(y, consumed);
        even = Scalar();
        odd = Scalar();
        for (Word b = 0; b < bob_words; ++b) {
          const Scalar& p = joint.at(inputs, a_rest | bits::scatter(b, consumed));
          if (p.is_zero()) continue;
          (std::popcount(b) & 1 ? odd : even) += p;
        }
        total += even;
        total += odd;
        if (!d[y].is_zero()) signed_total.add_product(2 * d[y], even - odd);
      }
      const std::size_t slot = (static_cast<std::size_t>(x) << m) | a;
      tables[0][slot] = (total + signed_total) * success_scale;
      tables[1][slot] = total * uniform_scale - tables[0][slot];
    }
  }
  return {BoxTable(m, std::move(tables[0]), BoxTable::Kind::quasi),
          BoxTable(m, std::move(tables[1]), BoxTable::Kind::quasi)};
}

std::array<BranchResult, 2> apply_coupler(const CouplerEffect& coupler, const BoxTable& joint,
                                          std::span<const int> consumed) {
  std::array<BoxTable, 2> tables = branch_tables(coupler, joint, consumed);
  std::array<BranchResult, 2> out;
  for (int outcome = 0; outcome < 2; ++outcome) {
    BoxTable& table = tables[static_cast<std::size_t>(outcome)];
    for (const auto& entry : table.entries()) {
      if (entry.sign() < 0) throw CouplerInvalid(outcome, "negative entry " + entry.to_string(), table);
    }
    Scalar mass;
    for (Word x = 0; x < table.words(); ++x) {
      Scalar row;
      for (Word a = 0; a < table.words(); ++a) row += table.at(x, a);
      if (x == 0) mass = row;
      else if (row != mass) throw CouplerInvalid(outcome, "branch mass depends on the surviving inputs", table);
    }
    BranchResult& branch = out[static_cast<std::size_t>(outcome)];
    branch.outcome = outcome;
    branch.probability = mass;
    if (mass.is_zero()) continue;
    BoxTable normalized = table.scaled(mass.inverse());
    const ValidationReport report = validate(normalized);
    if (!report.ok()) {
      std::string why = "branch box invalid:";
      for (const auto& f : report.failures()) why += " " + f + ";";
      throw CouplerInvalid(outcome, why, table);
    }
    branch.box = BoxTable::trusted(normalized.parties(), {normalized.entries().begin(), normalized.entries().end()});
  }
  return out;
}

}  // namespace nlswap
