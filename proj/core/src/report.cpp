#include "nlswap/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "nlswap/serialization.hpp"

namespace nlswap {

using nlohmann::json;

std::string outcome_text(const std::vector<int>& outcomes) {
  if (outcomes.empty()) return "root";
  std::string out;
  for (int b : outcomes) out += static_cast<char>('0' + b);
  return out;
}

namespace {

json optional_box(const std::optional<BoxTable>& box) { return box ? box_to_json(*box) : json(nullptr); }

std::optional<BoxTable> optional_box_from(const json& doc) {
  if (doc.is_null()) return std::nullopt;
  return box_from_json(doc).as_distribution();
}

std::vector<int> bits_from(const json& doc) { return doc.get<std::vector<int>>(); }

}  // namespace

json report_to_json(const ScenarioReport& report) {
  json doc = json::object();
  doc["scenario"] = report.name;
  doc["parties"] = report.labels;

  json branches = json::array();
  for (const auto& b : report.branches) {
    json entry = json::object();
    entry["outcomes"] = b.outcomes;
    entry["probability"] = scalar_to_json(b.probability);
    entry["probability_decimal"] = b.probability.to_decimal();
    entry["selected"] = b.selected;
    entry["box"] = optional_box(b.box);
    json functionals = json::array();
    for (const auto& f : b.functionals) {
      functionals.push_back({{"name", f.name}, {"value", scalar_to_json(f.value)}, {"decimal", f.value.to_decimal()}});
    }
    entry["functionals"] = std::move(functionals);
    if (b.classification) {
      entry["verdict"] = {{"gsi", scalar_to_json(b.classification->gsi_value)},
                          {"exceeds_local", b.classification->exceeds_local},
                          {"exceeds_quantum", b.classification->exceeds_quantum}};
    } else {
      entry["verdict"] = nullptr;
    }
    branches.push_back(std::move(entry));
  }
  doc["branches"] = std::move(branches);
  doc["selected_probability"] = scalar_to_json(report.selected_probability);
  doc["selected_probability_decimal"] = report.selected_probability.to_decimal();

  json groups = json::array();
  for (const auto& g : report.groups) {
    groups.push_back({{"name", g.name},
                      {"probability", scalar_to_json(g.probability)},
                      {"probability_decimal", g.probability.to_decimal()},
                      {"members", g.members},
                      {"box", optional_box(g.box)}});
  }
  doc["groups"] = std::move(groups);

  json allowed = json::array();
  for (const auto& a : report.allowed) {
    allowed.push_back({{"coupler", a.step + 1},
                       {"branch", a.path},
                       {"allowed", a.allowed},
                       {"success_probability", scalar_to_json(a.success_probability)}});
  }
  doc["allowed"] = std::move(allowed);

  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"expected", c.expected}, {"computed", c.computed}, {"passed", c.passed}});
  }
  doc["checks"] = std::move(checks);
  doc["passed"] = report.all_checks_passed();
  return doc;
}

ScenarioReport report_from_json(const json& doc) {
  try {
    ScenarioReport report;
    report.name = doc.at("scenario").get<std::string>();
    report.labels = doc.at("parties").get<std::vector<std::string>>();
    for (const auto& b : doc.at("branches")) {
      BranchRecord r;
      r.outcomes = bits_from(b.at("outcomes"));
      r.probability = scalar_from_json(b.at("probability"));
      r.selected = b.at("selected").get<bool>();
      r.box = optional_box_from(b.at("box"));
      for (const auto& f : b.at("functionals")) {
        r.functionals.push_back({f.at("name").get<std::string>(), scalar_from_json(f.at("value"))});
      }
      if (!b.at("verdict").is_null()) {
        const json& v = b.at("verdict");
        r.classification = Classification{scalar_from_json(v.at("gsi")), v.at("exceeds_local").get<bool>(),
                                          v.at("exceeds_quantum").get<bool>()};
      }
      report.branches.push_back(std::move(r));
    }
    report.selected_probability = scalar_from_json(doc.at("selected_probability"));
    for (const auto& g : doc.at("groups")) {
      BranchGroup group{g.at("name").get<std::string>(), scalar_from_json(g.at("probability")),
                        optional_box_from(g.at("box")), {}};
      for (const auto& m : g.at("members")) group.members.push_back(bits_from(m));
      report.groups.push_back(std::move(group));
    }
    for (const auto& a : doc.at("allowed")) {
      report.allowed.push_back({a.at("coupler").get<std::size_t>() - 1, bits_from(a.at("branch")),
                                a.at("allowed").get<bool>(), scalar_from_json(a.at("success_probability"))});
    }
    for (const auto& c : doc.at("checks")) {
      report.checks.push_back({c.at("name").get<std::string>(), c.at("expected").get<std::string>(),
                               c.at("computed").get<std::string>(), c.at("passed").get<bool>()});
    }
    return report;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report document: ") + e.what());
  }
}

namespace {

std::string pad(const std::string& text, std::size_t width) {
  // "√" and "·" are multi-byte; count code points for alignment.
  std::size_t glyphs = 0;
  for (unsigned char c : text) glyphs += (c & 0xC0) != 0x80;
  return text + std::string(width > glyphs ? width - glyphs : 0, ' ');
}

std::size_t glyph_width(const std::string& text) {
  std::size_t glyphs = 0;
  for (unsigned char c : text) glyphs += (c & 0xC0) != 0x80;
  return glyphs;
}

}  // namespace

std::string render_box_table(const BoxTable& box) {
  const int n = box.parties();
  std::vector<std::vector<std::string>> cells(box.words(), std::vector<std::string>(box.words()));
  std::size_t width = static_cast<std::size_t>(std::max(n, 1));
  for (Word x = 0; x < box.words(); ++x) {
    for (Word a = 0; a < box.words(); ++a) {
      const Scalar& p = box.at(x, a);
      cells[x][a] = p.is_zero() ? "·" : p.to_string();
      width = std::max(width, glyph_width(cells[x][a]));
    }
  }
  std::ostringstream out;
  out << "P(a|x), " << n << " parties, words read with party 1 as the last digit\n";
  out << pad("x \\ a", std::max<std::size_t>(static_cast<std::size_t>(n), 5)) << " |";
  for (Word a = 0; a < box.words(); ++a) out << ' ' << pad(word_to_string(a, n), width);
  out << '\n';
  for (Word x = 0; x < box.words(); ++x) {
    out << pad(word_to_string(x, n), std::max<std::size_t>(static_cast<std::size_t>(n), 5)) << " |";
    for (Word a = 0; a < box.words(); ++a) out << ' ' << pad(cells[x][a], width);
    out << '\n';
  }
  return out.str();
}

std::string render_validation(const ValidationReport& report) {
  std::ostringstream out;
  out << "normalized:   " << (report.normalized ? "yes" : "NO") << '\n';
  out << "nonnegative:  " << (report.nonnegative ? "yes" : "NO") << '\n';
  out << "nonsignaling:";
  for (std::size_t i = 0; i < report.nonsignaling.size(); ++i) {
    out << " p" << (i + 1) << '=' << (report.nonsignaling[i] ? "yes" : "NO");
  }
  if (report.nonsignaling.empty()) out << " (no parties)";
  out << '\n';
  return out.str();
}

std::string render_report_table(const ScenarioReport& report) {
  std::ostringstream out;
  out << "scenario: " << report.name << '\n';
  out << "final parties:";
  for (const auto& l : report.labels) out << ' ' << l;
  out << "\n\n";

  out << pad("outcomes", 10) << pad("probability", 16) << pad("decimal", 16) << pad("sel", 5) << "values\n";
  for (const auto& b : report.branches) {
    std::string values;
    for (const auto& f : b.functionals) values += f.name + "=" + f.value.to_string() + " ";
    if (b.classification) {
      values += b.classification->exceeds_quantum ? "[exceeds quantum bound]"
                : b.classification->exceeds_local ? "[exceeds local bound]"
                                                  : "[within local bound]";
    }
    if (!b.box) values += "(empty branch)";
    out << pad(outcome_text(b.outcomes), 10) << pad(b.probability.to_string(), 16)
        << pad(b.probability.to_decimal(), 16) << pad(b.selected ? "*" : "", 5) << values << '\n';
  }
  out << "selected probability: " << report.selected_probability << " (" << report.selected_probability.to_decimal()
      << ")\n";

  if (!report.groups.empty()) {
    out << "\ngroups:\n";
    for (const auto& g : report.groups) {
      out << "  " << pad(g.name, 30) << pad(g.probability.to_string(), 10) << g.members.size() << " branch(es)\n";
    }
  }
  if (!report.allowed.empty()) {
    out << "\nallowed region:\n";
    for (const auto& a : report.allowed) {
      out << "  coupler " << a.step + 1 << " on branch " << outcome_text(a.path) << ": "
          << (a.allowed ? "allowed" : "NOT allowed") << ", p(b'=0) = " << a.success_probability << '\n';
    }
  }
  if (!report.checks.empty()) {
    out << "\ncross-checks:\n";
    for (const auto& c : report.checks) {
      out << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name << ": expected " << c.expected << ", got "
          << c.computed << '\n';
    }
  }
  return out.str();
}

}  // namespace nlswap
