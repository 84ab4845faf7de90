#include "nlswap/serialization.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace nlswap {

using nlohmann::json;

namespace {

json integer_to_json(const mpz_class& value) {
  if (value.fits_slong_p()) return json(static_cast<std::int64_t>(value.get_si()));
  return json(value.get_str(10));
}

mpz_class integer_from_json(const json& doc, const char* where) {
  if (doc.is_number_integer()) return mpz_class(std::to_string(doc.get<std::int64_t>()), 10);
  if (doc.is_number_unsigned()) return mpz_class(std::to_string(doc.get<std::uint64_t>()), 10);
  if (doc.is_string()) {
    mpz_class value;
    if (value.set_str(doc.get<std::string>(), 10) != 0) {
      throw ParseError(std::string(where) + ": not a decimal integer: " + doc.dump());
    }
    return value;
  }
  throw ParseError(std::string(where) + ": expected an integer, got " + doc.dump());
}

json rational_to_json(const mpq_class& q) {
  return json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())});
}

mpq_class rational_from_json(const json& doc, const char* where) {
  if (!doc.is_array() || doc.size() != 2) throw ParseError(std::string(where) + ": expected [num, den]");
  mpz_class num = integer_from_json(doc[0], where);
  mpz_class den = integer_from_json(doc[1], where);
  if (den == 0) throw ParseError(std::string(where) + ": zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  return doc.at(key);
}

int party_count(const json& doc) {
  const json& n = require(doc, "n");
  if (!n.is_number_integer()) throw ParseError("\"n\" must be an integer");
  const int parties = n.get<int>();
  if (parties < 0 || parties > kMaxParties) throw ParseError("\"n\" out of range: " + std::to_string(parties));
  return parties;
}

}  // namespace

json scalar_to_json(const Scalar& value) {
  json doc = json::object();
  doc["r"] = rational_to_json(value.rational_part());
  doc["s"] = rational_to_json(value.surd_part());
  return doc;
}

Scalar scalar_from_json(const json& doc) {
  if (doc.is_number_integer()) return Scalar(doc.get<long>());
  if (doc.is_string()) {
    try {
      return parse_scalar(doc.get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(std::string("scalar: ") + e.what());
    }
  }
  if (!doc.is_object()) throw ParseError("scalar: expected {\"r\": [..], \"s\": [..]}, got " + doc.dump());
  mpq_class r = doc.contains("r") ? rational_from_json(doc.at("r"), "scalar.r") : mpq_class(0);
  mpq_class s = doc.contains("s") ? rational_from_json(doc.at("s"), "scalar.s") : mpq_class(0);
  return Scalar(std::move(r), std::move(s));
}

std::string word_to_string(Word word, int width) {
  std::string out(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if (bit_of(word, i)) out[static_cast<std::size_t>(width - 1 - i)] = '1';
  }
  return out;
}

Word word_from_string(const std::string& text, int width) {
  if (static_cast<int>(text.size()) != width) {
    throw ParseError("word \"" + text + "\" must have " + std::to_string(width) + " binary digits");
  }
  Word word = 0;
  for (int i = 0; i < width; ++i) {
    const char c = text[static_cast<std::size_t>(width - 1 - i)];
    if (c != '0' && c != '1') throw ParseError("word \"" + text + "\" is not binary");
    if (c == '1') word |= Word{1} << i;
  }
  return word;
}

json box_to_json(const BoxTable& box) {
  json probs = json::array();
  const int n = box.parties();
  for (Word x = 0; x < box.words(); ++x) {
    for (Word a = 0; a < box.words(); ++a) {
      const Scalar& p = box.at(x, a);
      if (p.is_zero()) continue;
      probs.push_back(json::array({word_to_string(x, n), word_to_string(a, n), scalar_to_json(p)}));
    }
  }
  json doc = json::object();
  doc["n"] = n;
  doc["order"] = "party1-lsb";
  doc["probs"] = std::move(probs);
  return doc;
}

BoxTable box_from_json(const json& doc) {
  const int n = party_count(doc);
  if (doc.contains("order") && doc.at("order") != "party1-lsb") {
    throw ParseError("unsupported party order " + doc.at("order").dump() + " (expected \"party1-lsb\")");
  }
  const json& probs = require(doc, "probs");
  if (!probs.is_array()) throw ParseError("\"probs\" must be an array");
  BoxTable table = BoxTable::zeros(n);
  std::vector<Scalar> entries(table.entries().begin(), table.entries().end());
  std::vector<bool> seen(entries.size(), false);
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const json& row = probs[k];
    const std::string where = "probs[" + std::to_string(k) + "]";
    if (!row.is_array() || row.size() != 3 || !row[0].is_string() || !row[1].is_string()) {
      throw ParseError(where + ": expected [input_word, output_word, scalar]");
    }
    const Word x = word_from_string(row[0].get<std::string>(), n);
    const Word a = word_from_string(row[1].get<std::string>(), n);
    const std::size_t slot = table.index(x, a);
    if (seen[slot]) throw ParseError(where + ": duplicate entry");
    seen[slot] = true;
    try {
      entries[slot] = scalar_from_json(row[2]);
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return BoxTable(n, std::move(entries), BoxTable::Kind::quasi);
}

json functional_to_json(const BellFunctional& functional) {
  json coeffs = json::array();
  for (Word x = 0; x < functional.coeffs.size(); ++x) {
    coeffs.push_back(json::array({word_to_string(x, functional.parties), scalar_to_json(functional.coeffs[x])}));
  }
  json doc = json::object();
  doc["n"] = functional.parties;
  doc["coeffs"] = std::move(coeffs);
  return doc;
}

BellFunctional functional_from_json(const json& doc) {
  const int n = party_count(doc);
  const json& coeffs = require(doc, "coeffs");
  if (!coeffs.is_array()) throw ParseError("\"coeffs\" must be an array");
  BellFunctional f{n, std::vector<Scalar>(std::size_t{1} << n)};
  for (const json& row : coeffs) {
    if (!row.is_array() || row.size() != 2 || !row[0].is_string()) {
      throw ParseError("coeffs: expected [input_word, scalar]");
    }
    f.coeffs[word_from_string(row[0].get<std::string>(), n)] = scalar_from_json(row[1]);
  }
  return f;
}

json coupler_to_json(const CouplerEffect& coupler) {
  const int n = coupler.arity();
  const Word words = Word{1} << n;
  json weights = json::array();
  for (int outcome = 0; outcome < 2; ++outcome) {
    for (Word y = 0; y < words; ++y) {
      for (Word b = 0; b < words; ++b) {
        weights.push_back(json::array({outcome, word_to_string(b, n), word_to_string(y, n),
                                       scalar_to_json(coupler.weight(outcome, b, y))}));
      }
    }
  }
  json doc = json::object();
  doc["n"] = n;
  doc["form"] = coupler.form() == CouplerForm::swap ? "swap" : "gsi_correlator";
  doc["coeffs"] = functional_to_json(coupler.success_functional())["coeffs"];
  doc["weights"] = std::move(weights);
  return doc;
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line/column context.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::size_t line_start = text.rfind('\n', stop == 0 ? 0 : stop - 1);
    line_start = (line_start == std::string::npos) ? 0 : line_start + 1;
    std::size_t line_end = text.find('\n', line_start);
    const std::string context = text.substr(line_start, line_end == std::string::npos ? std::string::npos
                                                                                      : line_end - line_start);
    throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) +
                     ": syntax error near: " + context);
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path.string());
}

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace nlswap
