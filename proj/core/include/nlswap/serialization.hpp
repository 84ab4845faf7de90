#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "nlswap/box.hpp"
#include "nlswap/coupler.hpp"
#include "nlswap/functional.hpp"
#include "nlswap/scalar.hpp"

namespace nlswap {

/// Malformed document. `what()` carries the JSON path or line context.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"r": [num, den], "s": [num, den]} meaning r + s*sqrt2. Integers are
/// written as JSON numbers when they fit in 64 bits and as decimal strings
/// otherwise; both are accepted on input.
nlohmann::json scalar_to_json(const Scalar& value);
Scalar scalar_from_json(const nlohmann::json& doc);

/// Binary numeral of `word` with `width` digits; party 1 is the last digit.
std::string word_to_string(Word word, int width);
Word word_from_string(const std::string& text, int width);

/// {"n": n, "order": "party1-lsb", "probs": [[input_word, output_word, Scalar], ...]}
/// with zero entries omitted.
nlohmann::json box_to_json(const BoxTable& box);
/// Reads a box document as a quasi table; callers validate.
BoxTable box_from_json(const nlohmann::json& doc);

/// {"n": n, "coeffs": [[input_word, Scalar], ...]}
nlohmann::json functional_to_json(const BellFunctional& functional);
BellFunctional functional_from_json(const nlohmann::json& doc);

/// Functional format extended with outcome and output words:
/// {"n": N, "form": ..., "weights": [[b', output_word, input_word, Scalar], ...]}
nlohmann::json coupler_to_json(const CouplerEffect& coupler);

/// Parses JSON text; syntax errors report line and column.
nlohmann::json parse_json_text(const std::string& text, const std::string& origin);
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Canonical text form used for every document the library writes.
std::string dump_json(const nlohmann::json& doc);

}  // namespace nlswap
