#include <doctest.h>

#include <string>
#include <vector>

#include "jetseq/catalog.hpp"
#include "jetseq/dsl.hpp"
#include "jetseq/report.hpp"
#include "jetseq/system.hpp"

using namespace jetseq;

TEST_CASE("parsing the canonical three-equation example") {
  const char* text = R"(system mac {
    vars x1 x2 x3;
    unknowns y;
    eq: y(3,3) = 0;
    eq q23: y(2,3) - y(1,1) = 0;
    eq: y(2,2) = 0;
  })";
  auto doc = parse_document(text);
  CHECK(doc.name == "mac");
  CHECK(doc.variables == std::vector<std::string>{"x1", "x2", "x3"});
  CHECK(doc.unknowns == std::vector<std::string>{"y"});
  CHECK(doc.order == 2);
  REQUIRE(doc.equations.size() == 3);
  CHECK(doc.equations[1].label == "q23");
  CHECK(doc.system() == catalog_system("macaulay"));
}

TEST_CASE("jet factors, coefficients, and like-term handling") {
  auto doc = parse_document(R"(system t {
    vars x y;
    unknowns u v;
    eq: 2*u(1,1) + 1/3*v - u(1,1) = 0;
    eq: v(2) - v(2) + u = 0;
  })");
  CHECK(doc.order == 2);  // the surviving u(1,1) term sets the order
  REQUIRE(doc.equations.size() == 2);
  // 2*u(1,1) - u(1,1) collapses to a single term with coefficient 1; the
  // factor u(1,1) is the second derivative in x (indices repeat per degree).
  REQUIRE(doc.equations[0].terms.size() == 2);
  CHECK(doc.equations[0].terms[0].coeff == rat(1));
  CHECK(doc.equations[0].terms[0].mu.exp == std::vector<int>{2, 0});
  CHECK(doc.equations[0].terms[1].coeff == rat(1, 3));
  CHECK(doc.equations[0].terms[1].unknown == 1);
  // v(2) cancels entirely; only the order-0 jet of u remains.
  REQUIRE(doc.equations[1].terms.size() == 1);
  CHECK(doc.equations[1].terms[0].mu.degree() == 0);
}

TEST_CASE("terms are reported in frame order regardless of source order") {
  auto doc = parse_document(R"(system t {
    vars x y;
    unknowns u;
    eq: u + u(1) - u(2,2) = 0;
  })");
  const auto& terms = doc.equations[0].terms;
  REQUIRE(terms.size() == 3);
  CHECK(terms[0].mu.degree() == 2);
  CHECK(terms[1].mu.degree() == 1);
  CHECK(terms[2].mu.degree() == 0);
}

TEST_CASE("leading minus and explicit fractions") {
  auto doc = parse_document(R"(system t {
    vars x;
    unknowns u;
    eq: -u(1,1) + 3/2*u = 0;
  })");
  CHECK(doc.equations[0].terms[0].coeff == rat(-1));
  CHECK(doc.equations[0].terms[1].coeff == rat(3, 2));
}

TEST_CASE("parse errors carry one-based positions") {
  // Variable index out of range.
  try {
    parse_document("system s { vars x; unknowns y; eq: y(0) = 0; }");
    FAIL("expected DslError");
  } catch (const DslError& e) {
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).find("out of range") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_document("nonsense"), DslError);
  CHECK_THROWS_AS(parse_document("system s { vars x; unknowns y; eq: w = 0; }"),
                  DslError);  // unknown identifier
  CHECK_THROWS_AS(parse_document("system s { vars x; unknowns y; eq: 1/0*y = 0; }"),
                  DslError);  // zero denominator
  CHECK_THROWS_AS(parse_document("system s { vars x; unknowns y; eq: y = 0 }"),
                  DslError);  // missing semicolon
  CHECK_THROWS_AS(parse_document("system s { vars x x; unknowns y; eq: y = 0; }"),
                  DslError);  // repeated name

  try {
    parse_document("system s {\n  vars x;\n  unknowns y;\n  eq: y(2 = 0;\n}");
    FAIL("expected DslError");
  } catch (const DslError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("print and parse round-trip every built-in document") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    auto doc = catalog_document(name);
    auto text = print_document(doc);
    auto again = parse_document(text);
    CHECK(again == doc);
    CHECK(print_document(again) == text);
  }
}

TEST_CASE("wrapping a reduced system in a document") {
  auto sys = catalog_system("mixed_pair");
  auto doc = document_of(sys, "pair");
  CHECK(doc.name == "pair");
  CHECK(doc.variables == std::vector<std::string>{"x1", "x2"});
  CHECK(doc.unknowns == std::vector<std::string>{"u"});
  CHECK(doc.system() == sys);

  CHECK_THROWS_AS(document_of(sys, "pair", {"x1"}), std::invalid_argument);
  CHECK_THROWS_AS(document_of(sys, "pair", {"a", "a"}), std::invalid_argument);

  // A frame order higher than any surviving term cannot be printed: the text
  // form would silently downgrade on re-parse.
  auto low = LinearJetSystem::from_equations(
      JetFrame(1, 1, 2), {{JetTerm{rat(1), 0, MultiIndex({1})}}});
  CHECK_THROWS_AS(document_of(low, "low"), std::invalid_argument);
}

TEST_CASE("payloads carry the schema tag and the system header") {
  RankPolicy policy;
  auto doc = catalog_document("mixed_pair");
  auto payload = dims_report(doc, 3, policy);
  CHECK(payload.at("schema") == "jetseq/1");
  CHECK(payload.at("kind") == "dims");
  CHECK(payload.at("system").at("name") == "mixed_pair");
  CHECK(payload.at("system").at("vars") == 2);
  CHECK(payload.at("system").at("order") == 2);
  auto rows = payload.at("rows");
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].at("solution_dim") == 4);
  CHECK(rows[3].at("solution_dim") == 4);

  auto mac = dims_report(catalog_document("macaulay"), 2, policy);
  CHECK(mac.at("rows")[0].at("solution_dim") == 7);
  CHECK(mac.at("rows")[1].at("solution_dim") == 8);
}

TEST_CASE("condition payload reports the generator bound when one exists") {
  RankPolicy policy;
  auto k3 = cc_report(catalog_document("killing3"), 3, policy);
  CHECK(k3.at("generator_order_bound").at("order") == 2);
  CHECK(k3.at("first_condition_order") == 2);
  auto rows = k3.at("rows");
  CHECK(rows[1].at("new") == 6);
  CHECK(rows[2].at("new") == 0);
  CHECK(rows[2].at("inherited") == rows[2].at("total"));

  // No bound is available for a non-integrable input; the field stays null.
  auto mp = cc_report(catalog_document("mixed_pair"), 3, policy);
  CHECK(mp.at("generator_order_bound").is_null());
  CHECK(mp.at("first_condition_order") == 2);
}

TEST_CASE("chain payload canonicalizes unless asked not to") {
  RankPolicy policy;
  auto doc = catalog_document("macaulay");

  auto canonical = resolve_report(doc, 8, false, policy);
  CHECK(canonical.at("view").at("prolonged_input") == 1);
  CHECK(canonical.at("bundles") == Json::array({1, 12, 21, 46, 72, 48, 12}));
  CHECK(canonical.at("orders") == Json::array({3, 1, 2, 1, 1, 1}));
  CHECK(canonical.at("euler_characteristic") == 0);
  CHECK(canonical.at("complete") == true);

  auto raw = resolve_report(doc, 8, true, policy);
  CHECK(raw.at("view").at("prolonged_input") == 0);
  CHECK(raw.at("bundles") == Json::array({1, 3, 3, 1}));
  CHECK(raw.at("orders") == Json::array({2, 2, 2}));
}

TEST_CASE("every payload kind renders to text containing its numbers") {
  RankPolicy policy;
  auto doc = catalog_document("mixed_pair");

  auto expect_contains = [](const Json& payload, std::initializer_list<const char*> bits) {
    auto text = render_text(payload);
    for (const char* bit : bits) {
      CAPTURE(bit);
      CHECK(text.find(bit) != std::string::npos);
    }
    return text;
  };

  expect_contains(dims_report(doc, 2, policy), {"mixed_pair", "4"});
  expect_contains(symbol_report(doc, 2, policy), {"degree"});
  expect_contains(delta_report(doc, 1, policy), {"wedge"});
  expect_contains(acyclic_report(doc, 2, 4, policy), {"acyclic"});
  expect_contains(involution_report(doc, 6, 0, policy), {"involutive"});
  expect_contains(complete_report(doc, 32, 0, policy), {"project", "involutive"});
  expect_contains(tabular_report(doc, 0, policy), {"class"});
  expect_contains(spencer_report(doc, 0, policy), {"bundles"});
  expect_contains(janet_report(doc, 0, policy), {"bundles"});
  expect_contains(diagram_report(doc, 0, policy), {"janet"});
  expect_contains(cc_report(doc, 3, policy), {"order"});
  expect_contains(resolve_report(doc, 8, false, policy),
                  {"bundles: 1  2  1", "euler characteristic: 0"});
  expect_contains(solve_report(doc, 3, true, policy), {"degree", "dim 0"});
  // Solutions are labeled with the document's own unknown names.
  expect_contains(solve_report(catalog_document("conformal1"), 3, true, policy),
                  {"dim 3", "xi1 = 1/2*x1^2"});
  expect_contains(document_payload(doc), {"system mixed_pair", "y(2,2)"});
  expect_contains(catalog_payload(catalog_names()), {"macaulay", "killing5"});

  // The document text embedded in the payload is exactly the printer's.
  CHECK(render_text(document_payload(doc)) == print_document(doc));
}

TEST_CASE("check payload lists one line per criterion") {
  std::vector<CheckResult> results = {
      {1, "sample", true, "a=1", 0.01},
      {2, "other", false, "b=2 MISMATCH expected 3", 0.02},
  };
  auto payload = check_report(results);
  CHECK(payload.at("kind") == "check");
  CHECK(payload.at("all_passed") == false);
  auto text = render_text(payload);
  CHECK(text.find("sample") != std::string::npos);
  CHECK(text.find("PASS") != std::string::npos);
  CHECK(text.find("FAIL") != std::string::npos);
}
