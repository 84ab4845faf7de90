// nlswap: run scenarios, reproduce the reference numbers, inspect boxes.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlswap/box.hpp"
#include "nlswap/coupler.hpp"
#include "nlswap/functional.hpp"
#include "nlswap/report.hpp"
#include "nlswap/reproduce.hpp"
#include "nlswap/scenario.hpp"
#include "nlswap/serialization.hpp"

namespace {

enum Exit { kOk = 0, kInternal = 1, kInvalid = 2, kCouplerInvalid = 3 };

/// Validation failure with a printable detail.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(output);
  if (!out) throw InvalidInput("cannot write " + output);
  out << text;
  return kOk;
}

nlswap::BoxTable load_box(const std::string& path) {
  const nlswap::BoxTable table = nlswap::box_from_json(nlswap::read_json_file(path));
  const nlswap::ValidationReport report = nlswap::validate(table);
  if (!report.ok()) {
    std::string detail = path + ": not a valid nonsignaling box";
    for (const auto& f : report.failures()) detail += "\n  " + f;
    throw InvalidInput(detail);
  }
  return table.as_distribution();
}

int cmd_run(const std::string& path, const std::string& format, const std::string& output) {
  const nlswap::ScenarioReport report = nlswap::run_scenario_document(nlswap::read_json_file(path));
  if (format == "json") return emit(nlswap::dump_json(nlswap::report_to_json(report)), output);
  return emit(nlswap::render_report_table(report), output);
}

int cmd_reproduce(const std::vector<std::string>& filter, bool literal, const std::string& format,
                  const std::string& output) {
  const auto results = nlswap::reproduce({filter, literal});
  if (format == "json") {
    emit(nlswap::dump_json(nlswap::reproduce_to_json(results)), output);
  } else {
    emit(nlswap::render_reproduce_table(results), output);
  }
  return nlswap::all_passed(results) ? kOk : kInvalid;
}

std::string verdict(const nlswap::Scalar& value, const nlswap::BoundTriple& b) {
  const nlswap::Scalar v = value.abs();
  if (v > b.quantum) return "exceeds quantum bound (" + b.quantum.to_string() + ")";
  if (v > b.local) return "exceeds local bound (" + b.local.to_string() + ")";
  return "within local bound (" + b.local.to_string() + ")";
}

int cmd_eval(const std::string& path, const std::string& functional, std::optional<int> n) {
  const nlswap::BoxTable box = load_box(path);
  if (n && *n != box.parties()) {
    throw InvalidInput("arity mismatch: box has " + std::to_string(box.parties()) + " parties, requested " +
                       std::to_string(*n));
  }
  nlswap::Scalar value;
  nlswap::BoundTriple b;
  if (functional == "ch") {
    if (box.parties() != 2) {
      throw InvalidInput("arity mismatch: ch needs a 2-party box, got " + std::to_string(box.parties()));
    }
    value = nlswap::ch_evaluate(box);
    b = nlswap::ch_bounds();
  } else {
    value = nlswap::evaluate(nlswap::gsi_coefficients(box.parties()), box);
    b = nlswap::bounds(box.parties());
  }
  std::cout << functional << " = " << value << "  (" << value.to_decimal() << ")\n";
  std::cout << "bounds: local " << b.local << ", quantum " << b.quantum << ", algebraic " << b.algebraic << '\n';
  std::cout << verdict(value, b) << '\n';
  return kOk;
}

int cmd_show(const std::string& path) {
  const nlswap::BoxTable table = nlswap::box_from_json(nlswap::read_json_file(path));
  const nlswap::ValidationReport report = nlswap::validate(table);
  std::cout << nlswap::render_box_table(table) << '\n' << nlswap::render_validation(report);
  if (!report.ok()) {
    for (const auto& f : report.failures()) std::cerr << "nlswap: " << path << ": " << f << '\n';
    return kInvalid;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact nonlocal-box entanglement swapping"};
  app.require_subcommand(1);

  std::string path;
  std::string format = "table";
  std::string output;
  std::vector<std::string> filter;
  bool literal = false;
  std::string functional;
  std::optional<int> n;

  auto* run = app.add_subcommand("run", "Run a scenario file and report every branch");
  run->add_option("scenario", path, "Scenario JSON file")->required();
  run->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));
  run->add_option("--output", output, "Write the report here instead of stdout");

  auto* repro = app.add_subcommand("reproduce", "Run the acceptance checks");
  repro->add_option("--filter", filter, "Only run these check ids")->take_all();
  repro->add_flag("--literal-claims", literal, "Also assert the literal anti-PR claim (expected to fail)");
  repro->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));
  repro->add_option("--output", output, "Write the table here instead of stdout");

  auto* eval = app.add_subcommand("eval", "Evaluate a Bell functional on a box file");
  eval->add_option("box", path, "Box JSON file")->required();
  eval->add_option("functional", functional, "gsi or ch")->required()->check(CLI::IsMember({"gsi", "ch"}));
  eval->add_option("--n", n, "Expected number of parties");

  auto* show = app.add_subcommand("show", "Pretty-print a box file and validate it");
  show->add_option("box", path, "Box JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*run) return cmd_run(path, format, output);
    if (*repro) return cmd_reproduce(filter, literal, format, output);
    if (*eval) return cmd_eval(path, functional, n);
    if (*show) return cmd_show(path);
  } catch (const nlswap::ScenarioCouplerError& e) {
    std::cerr << "nlswap: coupler invalid: " << e.what() << '\n';
    return kCouplerInvalid;
  } catch (const nlswap::CouplerInvalid& e) {
    std::cerr << "nlswap: " << e.what() << '\n';
    return kCouplerInvalid;
  } catch (const nlswap::ParseError& e) {
    std::cerr << "nlswap: " << e.what() << '\n';
    return kInvalid;
  } catch (const nlswap::ScenarioError& e) {
    std::cerr << "nlswap: invalid scenario: " << e.what() << '\n';
    return kInvalid;
  } catch (const nlswap::BoxError& e) {
    std::cerr << "nlswap: invalid box: " << e.what() << '\n';
    return kInvalid;
  } catch (const nlswap::UnknownCheck& e) {
    std::cerr << "nlswap: " << e.what() << '\n';
    return kInvalid;
  } catch (const InvalidInput& e) {
    std::cerr << "nlswap: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "nlswap: internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
