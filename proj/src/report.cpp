#include "jetseq/report.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "jetseq/catalog.hpp"
#include "jetseq/delta.hpp"
#include "jetseq/poly.hpp"
#include "jetseq/sequence.hpp"
#include "jetseq/system.hpp"

namespace jetseq {

namespace {

Json base_payload(const std::string& kind, const SystemDocument& doc) {
  Json j;
  j["schema"] = "jetseq/1";
  j["kind"] = kind;
  j["system"] = {{"name", doc.name},
                 {"vars", doc.variables.size()},
                 {"unknowns", doc.unknowns.size()},
                 {"order", doc.order}};
  return j;
}

Json acyclicity_json(const AcyclicityReport& r) {
  Json j;
  j["acyclic"] = r.acyclic;
  j["certified"] = r.certified;
  j["checked_up_to"] = r.checked_up_to;
  j["zero_symbol_degree"] = r.zero_symbol_degree ? Json(*r.zero_symbol_degree) : Json();
  if (r.failure) {
    j["failure"] = {{"s", r.failure->first}, {"t", r.failure->second}};
  } else {
    j["failure"] = Json();
  }
  return j;
}

Json cartan_json(const CartanTestReport& r) {
  return Json{{"characters", r.characters},
              {"expected_prolonged_dim", r.expected_prolonged_dim},
              {"prolonged_dim", r.prolonged_dim},
              {"passed", r.passed},
              {"coordinate_changes_used", r.coordinate_changes_used}};
}

Json involutivity_json(const InvolutivityReport& r) {
  return Json{{"involutive", r.involutive},
              {"certified", r.certified},
              {"projection_stable", r.projection_stable},
              {"acyclicity", acyclicity_json(r.acyclicity)},
              {"cartan", cartan_json(r.cartan)}};
}

// Completion used by the bundle-row commands: they are defined on involutive
// systems, so the input is completed first and the view is reported.
struct InvolutiveView {
  LinearJetSystem system;
  int steps = 0;
};

InvolutiveView involutive_view(const SystemDocument& doc, std::uint64_t seed,
                               const RankPolicy& policy) {
  auto comp = involutive_completion(doc.system(), 32, seed, policy);
  if (!comp.completed) {
    throw std::runtime_error("completion did not reach an involutive system in 32 steps");
  }
  return {comp.system, static_cast<int>(comp.trace.size())};
}

void attach_view(Json& j, const InvolutiveView& view) {
  j["view"] = {{"order", view.system.frame().order()},
               {"completion_steps", view.steps},
               {"solution_dim", view.system.solution_dim()}};
}

}  // namespace

Json dims_report(const SystemDocument& doc, int extra, const RankPolicy& policy) {
  auto j = base_payload("dims", doc);
  auto s = doc.system();
  const auto& f = s.frame();
  j["independent_equations"] = s.equations().rows();
  Json rows = Json::array();
  for (int r = f.order(); r <= f.order() + extra; ++r) {
    rows.push_back({{"order", r},
                    {"jet_dim", dim_jet(f.base_dim(), f.fiber_dim(), r)},
                    {"solution_dim", solution_dim_at(s, r, policy)}});
  }
  j["rows"] = rows;
  return j;
}

Json symbol_report(const SystemDocument& doc, int extra, const RankPolicy& policy) {
  (void)policy;
  auto j = base_payload("symbol", doc);
  auto s = doc.system();
  Json rows = Json::array();
  Json finite_type;
  for (int t = s.frame().order(); t <= s.frame().order() + extra; ++t) {
    long d = symbol_at(s, t).dim();
    rows.push_back({{"degree", t}, {"dim", d}});
    if (d == 0 && finite_type.is_null()) finite_type = t;
  }
  j["rows"] = rows;
  j["first_zero_degree"] = finite_type;
  return j;
}

Json delta_report(const SystemDocument& doc, int extra, const RankPolicy& policy) {
  auto j = base_payload("delta", doc);
  auto s = doc.system();
  const int n = s.frame().base_dim();
  Json groups = Json::array();
  for (int t = s.frame().order(); t <= s.frame().order() + extra; ++t) {
    for (int w = 0; w <= n; ++w) {
      groups.push_back({{"s", w}, {"t", t}, {"dim", cohomology_dim(s, w, t, policy)}});
    }
  }
  j["groups"] = groups;
  j["max_wedge"] = n;
  return j;
}

Json acyclic_report(const SystemDocument& doc, int s, int bound, const RankPolicy& policy) {
  auto j = base_payload("acyclic", doc);
  j["s"] = s;
  j["bound"] = bound;
  j["report"] = acyclicity_json(is_s_acyclic(doc.system(), s, bound, policy));
  return j;
}

Json involution_report(const SystemDocument& doc, int bound, std::uint64_t seed,
                       const RankPolicy& policy) {
  auto j = base_payload("involution", doc);
  j["bound"] = bound;
  j["report"] = involutivity_json(is_involutive(doc.system(), bound, seed, policy));
  return j;
}

Json complete_report(const SystemDocument& doc, int max_steps, std::uint64_t seed,
                     const RankPolicy& policy) {
  auto j = base_payload("complete", doc);
  auto comp = involutive_completion(doc.system(), max_steps, seed, policy);
  Json trace = Json::array();
  for (const auto& step : comp.trace) {
    trace.push_back(
        {{"step", step.kind == CompletionStep::Kind::Prolong ? "prolong" : "project"},
         {"order_after", step.order_after},
         {"dim_after", step.dim_after}});
  }
  j["trace"] = trace;
  j["completed"] = comp.completed;
  j["final_order"] = comp.system.frame().order();
  j["final_dim"] = comp.system.solution_dim();
  j["involutive"] = comp.verdict.involutive;
  try {
    j["document"] = print_document(
        document_of(comp.system, doc.name + "_completed", doc.variables, doc.unknowns));
  } catch (const std::exception&) {
    j["document"] = Json();  // e.g. no equations left: order is not printable
  }
  return j;
}

Json tabular_report(const SystemDocument& doc, std::uint64_t seed, const RankPolicy& policy) {
  auto j = base_payload("tabular", doc);
  auto view = involutive_view(doc, seed, policy);
  attach_view(j, view);
  auto tab = janet_tabular(view.system, policy);
  Json rows = Json::array();
  for (const auto& r : tab.rows) {
    rows.push_back(
        {{"order", r.order}, {"class", r.cls}, {"count", r.count}, {"dots", r.dots}});
  }
  j["rows"] = rows;
  j["bundles_by_dots"] = janet_bundles_by_dots(tab);
  return j;
}

Json spencer_report(const SystemDocument& doc, std::uint64_t seed, const RankPolicy& policy) {
  auto j = base_payload("spencer", doc);
  auto view = involutive_view(doc, seed, policy);
  attach_view(j, view);
  auto row = spencer_bundles(view.system, policy);
  j["bundles"] = row;
  long alt = 0;
  for (size_t i = 0; i < row.size(); ++i) alt += (i % 2 ? -row[i] : row[i]);
  j["alternating_sum"] = alt;
  return j;
}

Json janet_report(const SystemDocument& doc, std::uint64_t seed, const RankPolicy& policy) {
  auto j = base_payload("janet", doc);
  auto view = involutive_view(doc, seed, policy);
  attach_view(j, view);
  auto diag = fundamental_diagram(view.system, policy);
  j["dim_e"] = diag.dim_e;
  j["bundles"] = diag.janet;
  j["alternating_sum"] = diag.janet_euler;
  return j;
}

Json diagram_report(const SystemDocument& doc, std::uint64_t seed, const RankPolicy& policy) {
  auto j = base_payload("diagram", doc);
  auto view = involutive_view(doc, seed, policy);
  attach_view(j, view);
  auto diag = fundamental_diagram(view.system, policy);
  j["dim_e"] = diag.dim_e;
  j["spencer"] = diag.spencer;
  j["hybrid"] = diag.hybrid;
  j["janet"] = diag.janet;
  j["alternating_sums"] = {{"spencer", diag.spencer_euler},
                           {"hybrid", diag.hybrid_euler},
                           {"janet", diag.janet_euler}};
  j["dots_checked"] = diag.dots_checked;
  return j;
}

Json cc_report(const SystemDocument& doc, int budget, const RankPolicy& policy) {
  auto j = base_payload("cc", doc);
  auto s = doc.system();
  Json bound;
  try {
    auto b = cc_order_bound(s, 8, 3, policy);
    bound = {{"order", b.order},
             {"prolongations", b.prolongations},
             {"certified", b.certified}};
  } catch (const std::exception&) {
    bound = Json();  // no bound without formal integrability
  }
  j["generator_order_bound"] = bound;

  auto d = OperatorHandle::from_system(s);
  std::vector<OperatorHandle> known;
  Json rows = Json::array();
  Json first_order;
  for (int r = 1; r <= budget; ++r) {
    auto cc = cc_at_order(d, r, known, policy);
    rows.push_back({{"order", r},
                    {"total", cc.total_dim},
                    {"inherited", cc.inherited_dim},
                    {"new", cc.new_dim}});
    if (cc.total_dim > 0 && first_order.is_null()) first_order = r;
    if (cc.new_dim > 0) {
      auto full = known.empty() ? std::move(cc) : cc_at_order(d, r, {}, policy);
      known.assign(1, OperatorHandle::from_rows(
                          JetFrame(s.frame().base_dim(), d.target_dim(), r),
                          full.generators));
    }
  }
  j["rows"] = rows;
  j["first_condition_order"] = first_order;
  return j;
}

Json resolve_report(const SystemDocument& doc, int budget, bool raw,
                    const RankPolicy& policy) {
  auto j = base_payload("resolve", doc);
  LinearJetSystem view = doc.system();
  int prolonged = 0;
  if (!raw) {
    try {
      auto b = cc_order_bound(view, 8, 3, policy);  // throws unless FI
      const auto& f = view.frame();
      const bool affordable =
          dim_jet(f.base_dim(), f.fiber_dim(), f.order() + b.prolongations + 3) <= 2000;
      if (b.certified && b.prolongations > 0 && affordable) {
        view = prolong(view, b.prolongations);
        prolonged = b.prolongations;
      }
    } catch (const std::exception&) {
      // Not formally integrable (or no certified bound): resolve as given.
    }
  }
  j["view"] = {{"order", view.frame().order()}, {"prolonged_input", prolonged}};

  auto rep = resolution(view, budget, 2, policy);
  j["bundles"] = rep.bundles;
  j["orders"] = rep.orders;
  Json steps = Json::array();
  for (const auto& st : rep.steps) {
    steps.push_back({{"order", st.order},
                     {"dim", st.target_dim},
                     {"certified", st.certified},
                     {"stop", st.stop_reason}});
  }
  j["steps"] = steps;
  j["complete"] = rep.complete;
  j["certified"] = rep.certified;
  j["euler_characteristic"] = rep.euler_characteristic;
  j["notes"] = rep.notes;
  return j;
}

Json solve_report(const SystemDocument& doc, int degree, bool with_basis,
                  const RankPolicy& policy) {
  auto j = base_payload("solve", doc);
  auto s = doc.system();
  auto rep = polynomial_solutions(s, degree, policy);
  j["degree"] = rep.degree;
  j["dim"] = rep.dim;
  j["complete"] = rep.complete;
  if (with_basis) {
    Json basis = Json::array();
    for (const auto& section : polynomial_solution_basis(s, degree)) {
      Json fields = Json::array();
      for (const auto& p : section) fields.push_back(p.to_string());
      basis.push_back(fields);
    }
    j["basis"] = basis;
    j["unknown_names"] = doc.unknowns;
  }
  return j;
}

Json check_report(const std::vector<CheckResult>& results) {
  Json j;
  j["schema"] = "jetseq/1";
  j["kind"] = "check";
  Json rows = Json::array();
  bool all = true;
  for (const auto& r : results) {
    rows.push_back({{"id", r.id},
                    {"name", r.name},
                    {"passed", r.passed},
                    {"seconds", r.seconds},
                    {"detail", r.detail}});
    if (!r.passed) all = false;
  }
  j["results"] = rows;
  j["all_passed"] = all;
  return j;
}

Json document_payload(const SystemDocument& doc) {
  auto j = base_payload("document", doc);
  j["text"] = print_document(doc);
  return j;
}

Json catalog_payload(const std::vector<std::string>& names) {
  Json j;
  j["schema"] = "jetseq/1";
  j["kind"] = "catalog";
  j["names"] = names;
  return j;
}

// ---------------------------------------------------------------------------
// Text rendering. Only the payload is consulted.

namespace {

std::string join_numbers(const Json& arr, const char* sep = "  ") {
  std::ostringstream out;
  for (size_t i = 0; i < arr.size(); ++i) {
    if (i) out << sep;
    out << arr[i];
  }
  return out.str();
}

std::string system_line(const Json& j) {
  const auto& s = j.at("system");
  std::ostringstream out;
  out << s.at("name").get<std::string>() << ": " << s.at("vars") << " vars, "
      << s.at("unknowns") << " unknowns, order " << s.at("order");
  return out.str();
}

void view_line(std::ostringstream& out, const Json& j) {
  if (!j.contains("view")) return;
  const auto& v = j.at("view");
  out << "involutive view: order " << v.at("order") << " after "
      << v.at("completion_steps") << " completion step(s), solution dim "
      << v.at("solution_dim") << "\n";
}

std::string render_acyclicity(const Json& a, const std::string& indent) {
  std::ostringstream out;
  out << indent << "acyclic: " << (a.at("acyclic").get<bool>() ? "yes" : "no")
      << (a.at("certified").get<bool>() ? " (certified)" : " (up to bound only)")
      << ", checked up to degree " << a.at("checked_up_to") << "\n";
  if (!a.at("zero_symbol_degree").is_null()) {
    out << indent << "symbol vanishes from degree " << a.at("zero_symbol_degree") << "\n";
  }
  if (!a.at("failure").is_null()) {
    out << indent << "first nonzero group at wedge " << a.at("failure").at("s")
        << ", degree " << a.at("failure").at("t") << "\n";
  }
  return out.str();
}

}  // namespace

std::string render_text(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  std::ostringstream out;

  if (kind == "document") {
    return j.at("text").get<std::string>();
  }
  if (kind == "catalog") {
    for (const auto& n : j.at("names")) out << n.get<std::string>() << "\n";
    return out.str();
  }
  if (kind == "check") {
    for (const auto& r : j.at("results")) {
      out << "check " << r.at("id") << " (" << r.at("name").get<std::string>()
          << "): " << (r.at("passed").get<bool>() ? "PASS" : "FAIL") << "\n    "
          << r.at("detail").get<std::string>() << "\n";
    }
    out << (j.at("all_passed").get<bool>() ? "all checks passed" : "CHECK FAILURES PRESENT")
        << "\n";
    return out.str();
  }

  out << system_line(j) << "\n";

  if (kind == "dims") {
    out << "independent equations: " << j.at("independent_equations") << "\n";
    out << "order | jet dim | solution dim\n";
    for (const auto& r : j.at("rows")) {
      out << std::setw(5) << r.at("order").get<int>() << " | " << std::setw(7)
          << r.at("jet_dim").get<long>() << " | " << std::setw(12)
          << r.at("solution_dim").get<long>() << "\n";
    }
  } else if (kind == "symbol") {
    out << "degree | symbol dim\n";
    for (const auto& r : j.at("rows")) {
      out << std::setw(6) << r.at("degree").get<int>() << " | " << std::setw(10)
          << r.at("dim").get<long>() << "\n";
    }
    if (!j.at("first_zero_degree").is_null()) {
      out << "finite type: symbol vanishes at degree " << j.at("first_zero_degree") << "\n";
    }
  } else if (kind == "delta") {
    out << "boundary cohomology dims (rows: symbol degree, columns: wedge degree)\n";
    const int maxw = j.at("max_wedge").get<int>();
    out << "  t\\s";
    for (int w = 0; w <= maxw; ++w) out << std::setw(5) << w;
    out << "\n";
    int current_t = -1;
    for (const auto& g : j.at("groups")) {
      const int t = g.at("t").get<int>();
      if (t != current_t) {
        if (current_t != -1) out << "\n";
        out << std::setw(5) << t;
        current_t = t;
      }
      out << std::setw(5) << g.at("dim").get<long>();
    }
    out << "\n";
  } else if (kind == "acyclic") {
    out << "s-acyclicity for s = " << j.at("s") << ", bound " << j.at("bound") << "\n"
        << render_acyclicity(j.at("report"), "");
  } else if (kind == "involution") {
    const auto& r = j.at("report");
    out << "involutive: " << (r.at("involutive").get<bool>() ? "yes" : "no")
        << (r.at("certified").get<bool>() ? " (certified)" : " (up to bound only)") << "\n"
        << "projection stable: " << (r.at("projection_stable").get<bool>() ? "yes" : "no")
        << "\n"
        << "boundary route:\n"
        << render_acyclicity(r.at("acyclicity"), "  ") << "character route:\n"
        << "  characters: [" << join_numbers(r.at("cartan").at("characters"), ", ") << "]\n"
        << "  prolonged symbol dim " << r.at("cartan").at("prolonged_dim") << " vs expected "
        << r.at("cartan").at("expected_prolonged_dim") << " -> "
        << (r.at("cartan").at("passed").get<bool>() ? "pass" : "fail") << " after "
        << r.at("cartan").at("coordinate_changes_used") << " coordinate change(s)\n";
  } else if (kind == "complete") {
    for (const auto& st : j.at("trace")) {
      out << "  " << st.at("step").get<std::string>() << " -> order "
          << st.at("order_after") << ", solution dim " << st.at("dim_after") << "\n";
    }
    out << "completed: " << (j.at("completed").get<bool>() ? "yes" : "no") << "; final order "
        << j.at("final_order") << ", solution dim " << j.at("final_dim") << ", involutive "
        << (j.at("involutive").get<bool>() ? "yes" : "no") << "\n";
    if (!j.at("document").is_null()) out << j.at("document").get<std::string>();
  } else if (kind == "tabular") {
    view_line(out, j);
    out << "order | class | pivots | dots\n";
    for (const auto& r : j.at("rows")) {
      out << std::setw(5) << r.at("order").get<int>() << " | " << std::setw(5)
          << r.at("class").get<int>() << " | " << std::setw(6) << r.at("count").get<int>()
          << " | " << std::setw(4) << r.at("dots").get<int>() << "\n";
    }
    out << "bundles by dot counts: " << join_numbers(j.at("bundles_by_dots")) << "\n";
  } else if (kind == "spencer" || kind == "janet") {
    view_line(out, j);
    if (j.contains("dim_e")) out << "dim E: " << j.at("dim_e") << "\n";
    out << kind << " bundles: " << join_numbers(j.at("bundles")) << "\n"
        << "alternating sum: " << j.at("alternating_sum") << "\n";
  } else if (kind == "diagram") {
    view_line(out, j);
    out << "dim E: " << j.at("dim_e") << "\n"
        << "spencer: " << join_numbers(j.at("spencer")) << "   (alternating sum "
        << j.at("alternating_sums").at("spencer") << ")\n"
        << "hybrid:  " << join_numbers(j.at("hybrid")) << "   (alternating sum "
        << j.at("alternating_sums").at("hybrid") << ")\n"
        << "janet:   " << join_numbers(j.at("janet")) << "   (alternating sum "
        << j.at("alternating_sums").at("janet") << ")\n"
        << "dot-count cross-check: "
        << (j.at("dots_checked").get<bool>() ? "passed" : "not performed") << "\n";
  } else if (kind == "cc") {
    if (!j.at("generator_order_bound").is_null()) {
      const auto& b = j.at("generator_order_bound");
      out << "generator order bound: " << b.at("order") << " ("
          << b.at("prolongations") << " prolongation(s) to a 2-acyclic symbol"
          << (b.at("certified").get<bool>() ? ", certified" : "") << ")\n";
    } else {
      out << "generator order bound: none (not formally integrable)\n";
    }
    out << "order | total | inherited | new\n";
    for (const auto& r : j.at("rows")) {
      out << std::setw(5) << r.at("order").get<int>() << " | " << std::setw(5)
          << r.at("total").get<long>() << " | " << std::setw(9)
          << r.at("inherited").get<long>() << " | " << std::setw(3)
          << r.at("new").get<long>() << "\n";
    }
    if (!j.at("first_condition_order").is_null()) {
      out << "first conditions appear at order " << j.at("first_condition_order") << "\n";
    } else {
      out << "no conditions found in the scanned range\n";
    }
  } else if (kind == "resolve") {
    const auto& v = j.at("view");
    out << "start view: order " << v.at("order") << " (input prolonged "
        << v.at("prolonged_input") << " time(s))\n"
        << "bundles: " << join_numbers(j.at("bundles")) << "\n"
        << "orders:  " << join_numbers(j.at("orders")) << "\n";
    for (const auto& st : j.at("steps")) {
      out << "  step: order " << st.at("order") << ", dim " << st.at("dim") << ", stop="
          << st.at("stop").get<std::string>()
          << (st.at("certified").get<bool>() ? " (certified)" : "") << "\n";
    }
    out << "complete: " << (j.at("complete").get<bool>() ? "yes" : "no") << "; certified: "
        << (j.at("certified").get<bool>() ? "yes" : "no")
        << "; euler characteristic: " << j.at("euler_characteristic") << "\n";
    const auto notes = j.at("notes").get<std::string>();
    if (!notes.empty()) out << "notes: " << notes << "\n";
  } else if (kind == "solve") {
    out << "polynomial solutions of degree <= " << j.at("degree") << ": dim "
        << j.at("dim") << (j.at("complete").get<bool>()
                               ? " (complete: these are all formal solutions)"
                               : " (possibly more solutions above this degree)")
        << "\n";
    if (j.contains("basis")) {
      const auto& names = j.at("unknown_names");
      int idx = 0;
      for (const auto& section : j.at("basis")) {
        out << "  solution " << ++idx << ":";
        for (size_t c = 0; c < section.size(); ++c) {
          out << (c ? ", " : " ") << names[c].get<std::string>() << " = "
              << section[c].get<std::string>();
        }
        out << "\n";
      }
    }
  } else {
    throw std::invalid_argument("render_text: unknown payload kind '" + kind + "'");
  }
  return out.str();
}

}  // namespace jetseq
