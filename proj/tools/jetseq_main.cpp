// Command-line front end: parses system documents written in a small DSL,
// exposes every engine capability as a subcommand, and prints deterministic
// text or JSON reports (the same numbers either way).
//
// Exit codes: 0 success, 1 usage error, 2 document parse error,
//             3 engine error, 4 acceptance-check failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jetseq/catalog.hpp"
#include "jetseq/checks.hpp"
#include "jetseq/dsl.hpp"
#include "jetseq/report.hpp"
#include "jetseq/system.hpp"

namespace {

std::string slurp(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const jetseq::Json& payload, bool json_out) {
  if (json_out) {
    std::cout << payload.dump(2) << "\n";
  } else {
    std::cout << jetseq::render_text(payload);
  }
}

// Document-producing commands print bare DSL in text mode so they can be
// piped straight into another invocation.
void emit_document(const jetseq::SystemDocument& doc, bool json_out) {
  if (json_out) {
    std::cout << jetseq::document_payload(doc).dump(2) << "\n";
  } else {
    std::cout << jetseq::print_document(doc);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact dimension engine for linear constant-coefficient PDE systems"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the global flags after the subcommand too

  bool json_out = false;
  bool exact = false;
  std::uint64_t seed = 0;
  app.add_flag("--json", json_out, "emit the versioned JSON payload instead of text");
  app.add_flag("--exact", exact, "disable the modular rank fast path everywhere");
  app.add_option("--seed", seed,
                 "seed for modular primes and randomized coordinate changes");

  std::string input;  // shared positional: document file, "-" or empty = stdin
  auto add_input = [&input](CLI::App* cmd) {
    cmd->add_option("input", input, "system document file (default: stdin)");
  };

  auto* cmd_dims = app.add_subcommand("dims", "jet and solution dimension table");
  int dims_budget = 3;
  add_input(cmd_dims);
  cmd_dims->add_option("--budget", dims_budget, "levels beyond the system order");

  auto* cmd_prolong = app.add_subcommand("prolong", "prolong and print the document");
  int prolong_steps = 1;
  add_input(cmd_prolong);
  cmd_prolong->add_option("--steps", prolong_steps, "prolongation steps")
      ->check(CLI::PositiveNumber);

  auto* cmd_project = app.add_subcommand("project", "project and print the document");
  int project_order = -1;
  add_input(cmd_project);
  cmd_project->add_option("--order", project_order,
                          "target order (default: one below the system order)");

  auto* cmd_symbol = app.add_subcommand("symbol", "symbol dimensions by degree");
  int symbol_budget = 3;
  add_input(cmd_symbol);
  cmd_symbol->add_option("--budget", symbol_budget, "degrees beyond the system order");

  auto* cmd_delta = app.add_subcommand("delta", "boundary cohomology dimensions");
  int delta_budget = 2;
  add_input(cmd_delta);
  cmd_delta->add_option("--budget", delta_budget, "degrees beyond the system order");

  auto* cmd_acyclic = app.add_subcommand("acyclic", "s-acyclicity of the symbol tower");
  int acyclic_s = 2;
  int acyclic_budget = 6;
  add_input(cmd_acyclic);
  cmd_acyclic->add_option("--s", acyclic_s, "wedge degrees 1..s must vanish");
  cmd_acyclic->add_option("--budget", acyclic_budget, "symbol degrees to examine");

  auto* cmd_involution = app.add_subcommand("involution", "involutivity verdict");
  int involution_budget = 6;
  add_input(cmd_involution);
  cmd_involution->add_option("--budget", involution_budget, "acyclicity degree bound");

  auto* cmd_complete = app.add_subcommand("complete", "prolongation-projection completion");
  int complete_budget = 32;
  add_input(cmd_complete);
  cmd_complete->add_option("--budget", complete_budget, "maximum completion steps");

  auto* cmd_tabular = app.add_subcommand("tabular", "pivot census of the involutive view");
  add_input(cmd_tabular);

  auto* cmd_janet = app.add_subcommand("janet", "condition bundle row of the involutive view");
  add_input(cmd_janet);

  auto* cmd_spencer = app.add_subcommand("spencer", "intrinsic bundle row of the involutive view");
  add_input(cmd_spencer);

  auto* cmd_diagram = app.add_subcommand("diagram", "all three bundle rows with cross-checks");
  add_input(cmd_diagram);

  auto* cmd_cc = app.add_subcommand("cc", "compatibility-condition dimensions per order");
  int cc_budget = 4;
  add_input(cmd_cc);
  cmd_cc->add_option("--budget", cc_budget, "highest condition order scanned");

  auto* cmd_resolve = app.add_subcommand("resolve", "chain of compatibility operators");
  int resolve_budget = 8;
  bool resolve_raw = false;
  add_input(cmd_resolve);
  cmd_resolve->add_option("--budget", resolve_budget, "chain steps / per-step order cap");
  cmd_resolve->add_flag("--raw", resolve_raw,
                        "resolve the document's own view (skip the 2-acyclic prolongation)");

  auto* cmd_solve = app.add_subcommand("solve", "polynomial solution space");
  int solve_degree = 3;
  bool solve_basis = false;
  add_input(cmd_solve);
  cmd_solve->add_option("--degree", solve_degree, "polynomial degree bound");
  cmd_solve->add_flag("--basis", solve_basis, "print a basis of the solution space");

  auto* cmd_catalog = app.add_subcommand("catalog", "list built-in systems or print one");
  std::string catalog_name;
  cmd_catalog->add_option("name", catalog_name, "built-in system to print as a document");

  auto* cmd_check = app.add_subcommand("check", "run the acceptance suite");
  std::vector<int> check_only;
  bool skip_stretch = false;
  cmd_check->add_option("--only", check_only, "run only these check ids (1..10)");
  cmd_check->add_flag("--skip-stretch", skip_stretch,
                      "skip the long high-dimension resolution leg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  jetseq::RankPolicy policy;
  policy.seed = seed;
  policy.force_exact = exact;

  try {
    if (*cmd_catalog) {
      if (catalog_name.empty()) {
        emit(jetseq::catalog_payload(jetseq::catalog_names()), json_out);
        return 0;
      }
      try {
        emit_document(jetseq::catalog_document(catalog_name), json_out);
      } catch (const std::invalid_argument&) {
        std::cerr << "unknown catalog system '" << catalog_name
                  << "'; run `jetseq catalog` for the list\n";
        return 1;
      }
      return 0;
    }

    if (*cmd_check) {
      jetseq::CheckOptions opts;
      opts.policy = policy;
      opts.include_stretch = !skip_stretch;
      std::vector<jetseq::CheckResult> results;
      if (check_only.empty()) {
        results = jetseq::run_all_checks(opts);
      } else {
        for (int id : check_only) results.push_back(jetseq::run_check(id, opts));
      }
      auto payload = jetseq::check_report(results);
      emit(payload, json_out);
      return payload.at("all_passed").get<bool>() ? 0 : 4;
    }

    // Every remaining command consumes a document.
    jetseq::SystemDocument doc;
    try {
      doc = jetseq::parse_document(slurp(input));
    } catch (const jetseq::DslError& e) {
      std::cerr << "parse error: " << e.what() << "\n";
      return 2;
    }

    if (*cmd_dims) {
      emit(jetseq::dims_report(doc, dims_budget, policy), json_out);
    } else if (*cmd_prolong) {
      auto out = jetseq::document_of(jetseq::prolong(doc.system(), prolong_steps), doc.name,
                                     doc.variables, doc.unknowns);
      emit_document(out, json_out);
    } else if (*cmd_project) {
      const int target = project_order >= 0 ? project_order : doc.order - 1;
      auto out = jetseq::document_of(jetseq::project(doc.system(), target), doc.name,
                                     doc.variables, doc.unknowns);
      emit_document(out, json_out);
    } else if (*cmd_symbol) {
      emit(jetseq::symbol_report(doc, symbol_budget, policy), json_out);
    } else if (*cmd_delta) {
      emit(jetseq::delta_report(doc, delta_budget, policy), json_out);
    } else if (*cmd_acyclic) {
      emit(jetseq::acyclic_report(doc, acyclic_s, acyclic_budget, policy), json_out);
    } else if (*cmd_involution) {
      emit(jetseq::involution_report(doc, involution_budget, seed, policy), json_out);
    } else if (*cmd_complete) {
      emit(jetseq::complete_report(doc, complete_budget, seed, policy), json_out);
    } else if (*cmd_tabular) {
      emit(jetseq::tabular_report(doc, seed, policy), json_out);
    } else if (*cmd_janet) {
      emit(jetseq::janet_report(doc, seed, policy), json_out);
    } else if (*cmd_spencer) {
      emit(jetseq::spencer_report(doc, seed, policy), json_out);
    } else if (*cmd_diagram) {
      emit(jetseq::diagram_report(doc, seed, policy), json_out);
    } else if (*cmd_cc) {
      emit(jetseq::cc_report(doc, cc_budget, policy), json_out);
    } else if (*cmd_resolve) {
      emit(jetseq::resolve_report(doc, resolve_budget, resolve_raw, policy), json_out);
    } else if (*cmd_solve) {
      emit(jetseq::solve_report(doc, solve_degree, solve_basis, policy), json_out);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
