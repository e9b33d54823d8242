#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "jetseq/catalog.hpp"
#include "jetseq/delta.hpp"
#include "jetseq/dsl.hpp"
#include "jetseq/poly.hpp"
#include "jetseq/system.hpp"

using namespace jetseq;

TEST_CASE("flat isometry systems across dimensions") {
  for (int n = 2; n <= 5; ++n) {
    CAPTURE(n);
    auto k = killing_flat(FlatMetric::euclidean(n));
    CHECK(k.order() == 1);
    CHECK(k.frame().fiber_dim() == n);
    CHECK(k.equation_count() == n * (n + 1) / 2);
    // Solutions are the rigid motions: n translations + n(n-1)/2 rotations.
    const long motions = n * (n + 1) / 2;
    for (int r = 0; r <= 3; ++r) CHECK(solution_dim_at(k, 1 + r) == motions);
    CHECK(symbol_at(k, 1).dim() == n * (n - 1) / 2);
    CHECK(symbol_at(k, 2).dim() == 0);
    CHECK(is_formally_integrable(k, 4).formally_integrable);
  }
  // The signature does not matter for any of the dimension counts.
  auto mink = killing_flat(FlatMetric::minkowski(4));
  CHECK(mink.equation_count() == 10);
  for (int r = 0; r <= 3; ++r) CHECK(solution_dim_at(mink, 1 + r) == 10);
  CHECK(is_formally_integrable(mink, 4).formally_integrable);
}

TEST_CASE("trace-free variants have one equation less and conformal solutions") {
  for (int n = 3; n <= 5; ++n) {
    CAPTURE(n);
    auto c = conformal_killing_flat(FlatMetric::euclidean(n));
    CHECK(c.order() == 1);
    CHECK(c.equation_count() == n * (n + 1) / 2 - 1);
    CHECK(symbol_at(c, 2).dim() == n);      // gradient-like second symbol
    CHECK(symbol_at(c, 3).dim() == 0);      // finite type from degree 3 on
    CHECK(is_formally_integrable(c, 4).formally_integrable);
    // Conformal group dimension (n+1)(n+2)/2, reached at order 2 and stable.
    const long group = (n + 1) * (n + 2) / 2;
    for (int r = 1; r <= 3; ++r) CHECK(solution_dim_at(c, 1 + r) == group);
  }
}

TEST_CASE("low-dimensional conformal endpoints") {
  auto c1 = conformal_n1();
  CHECK(c1.order() == 3);
  CHECK(c1.frame().base_dim() == 1);
  CHECK(c1.equation_count() == 1);
  CHECK(c1.solution_dim() == 3);
  for (int r = 1; r <= 3; ++r) CHECK(solution_dim_at(c1, 3 + r) == 3);

  auto c2 = conformal_n2();
  CHECK(c2.order() == 3);
  CHECK(c2.frame().base_dim() == 2);
  CHECK(c2.frame().fiber_dim() == 2);
  CHECK(c2.equation_count() == 14);
  CHECK(c2.solution_dim() == 6);
  for (int r = 1; r <= 3; ++r) CHECK(solution_dim_at(c2, 3 + r) == 6);
}

TEST_CASE("double-divergence examples") {
  auto mac = macaulay();
  CHECK(mac.frame().base_dim() == 3);
  CHECK(mac.frame().fiber_dim() == 1);
  CHECK(mac.order() == 2);
  CHECK(mac.equation_count() == 3);
  CHECK(mac.solution_dim() == 7);
  CHECK(solution_dim_at(mac, 3) == 8);
  CHECK(solution_dim_at(mac, 4) == 8);
  CHECK(solution_dim_at(mac, 8) == 8);

  // Variant dims confirmed against a standalone elimination oracle.
  auto var = macaulay_variant();
  CHECK(var.solution_dim() == 7);
  CHECK(solution_dim_at(var, 3) == 8);
  CHECK(solution_dim_at(var, 4) == 8);
  CHECK(solution_dim_at(var, 6) == 8);
  CHECK(symbol_at(var, 4).dim() == 0);

  // Two-variable analogue y_22 = 0, y_12 - y_11 = 0: finite type with every
  // third derivative forced, so the dimension freezes at 2^2.
  {
    JetFrame f(2, 1, 2);
    auto two = LinearJetSystem::from_equations(
        f, {{JetTerm{rat(1), 0, MultiIndex({0, 2})}},
            {JetTerm{rat(1), 0, MultiIndex({1, 1})}, JetTerm{rat(-1), 0, MultiIndex({2, 0})}}});
    CHECK(two.solution_dim() == 4);
    for (int r = 1; r <= 3; ++r) CHECK(solution_dim_at(two, 2 + r) == 4);
    CHECK(symbol_at(two, 3).dim() == 0);
  }
}

TEST_CASE("order-mixing pair and its hand-written condition operators") {
  auto mp = mixed_pair();
  CHECK(mp.order() == 2);
  CHECK(mp.equation_count() == 2);
  for (int r = 0; r <= 5; ++r) CHECK(solution_dim_at(mp, 2 + r) == 4);

  auto cc2 = mixed_pair_cc_order2();
  CHECK(cc2.frame().base_dim() == 2);
  CHECK(cc2.frame().fiber_dim() == 2);  // jets of the two right-hand sides
  CHECK(cc2.order() == 2);
  CHECK(cc2.equation_count() == 1);

  auto cc4 = mixed_pair_cc_order4();
  CHECK(cc4.order() == 4);
  CHECK(cc4.equation_count() == 2);

  auto syz = mixed_pair_cc_syzygy();
  CHECK(syz.order() == 2);
  CHECK(syz.frame().fiber_dim() == 2);
  CHECK(syz.equation_count() == 1);
}

TEST_CASE("quadratic fields: commutation and divergence identities") {
  for (int n = 2; n <= 4; ++n) {
    CAPTURE(n);
    auto metric = FlatMetric::euclidean(n);
    auto thetas = elations(metric);
    REQUIRE(static_cast<int>(thetas.size()) == n);
    PolyVectorField zero{std::vector<Polynomial>(static_cast<size_t>(n), Polynomial(n))};
    for (int s = 0; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        CHECK(lie_bracket(thetas[static_cast<size_t>(s)], thetas[static_cast<size_t>(t)]) == zero);
      }
      // Divergence of theta_s is n * omega_{ss} x^s for a diagonal metric.
      Polynomial div(n);
      for (int r = 0; r < n; ++r)
        div += thetas[static_cast<size_t>(s)].components[static_cast<size_t>(r)].derivative(r);
      Polynomial expect = Polynomial::variable(n, s) * (metric.omega(s, s) * n);
      CHECK(div == expect);
      // Each component is an honest quadratic.
      for (const auto& comp : thetas[static_cast<size_t>(s)].components)
        CHECK(comp.degree() == 2);
    }
    // Every elation solves the trace-free system (n >= 3 only).
    if (n >= 3) {
      auto c = conformal_killing_flat(metric);
      for (const auto& th : thetas) CHECK(is_polynomial_solution(c, th.components));
    }
  }
}

TEST_CASE("six named fields solve the planar third-order system") {
  auto fields = conformal_basis_n2();
  REQUIRE(fields.size() == 6);
  auto c2 = conformal_n2();
  for (const auto& f : fields) CHECK(is_polynomial_solution(c2, f.components));

  // They are linearly independent and exhaust the 6-dimensional space.
  auto basis = polynomial_solution_basis(c2, 2);
  CHECK(basis.size() == 6);

  // Bracket pins: [translation, dilatation] = translation, and the two
  // elations commute with each other.
  const auto& d1 = fields[0];   // d/dx1
  const auto& dil = fields[3];  // x1 d/dx1 + x2 d/dx2
  CHECK(lie_bracket(d1, dil) == d1);
  CHECK(lie_bracket(fields[4], fields[5]) ==
        PolyVectorField{std::vector<Polynomial>(2, Polynomial(2))});
}

TEST_CASE("name lookup is complete and consistent") {
  auto names = catalog_names();
  CHECK(names.size() >= 15);
  std::set<std::string> seen(names.begin(), names.end());
  CHECK(seen.size() == names.size());
  for (const char* expected :
       {"killing2", "killing3", "killing4", "killing5", "conformal1", "conformal2",
        "conformal3", "conformal4", "conformal5", "macaulay", "macaulay_variant",
        "mixed_pair", "mixed_pair_cc2", "mixed_pair_cc4", "mixed_pair_syzygy"}) {
    CAPTURE(expected);
    CHECK(seen.count(expected) == 1);
  }
  for (const auto& name : names) {
    CAPTURE(name);
    auto sys = catalog_system(name);
    CHECK(sys.frame().size() > 0);
    // The printable document round-trips to the same system.
    auto doc = catalog_document(name);
    auto reparsed = parse_document(print_document(doc));
    CHECK(reparsed.system() == sys);
  }
  CHECK_THROWS(catalog_system("no_such_system"));
}

TEST_CASE("named lookups agree with the constructors") {
  CHECK(catalog_system("killing3") == killing_flat(FlatMetric::euclidean(3)));
  CHECK(catalog_system("conformal4") == conformal_killing_flat(FlatMetric::euclidean(4)));
  CHECK(catalog_system("conformal1") == conformal_n1());
  CHECK(catalog_system("conformal2") == conformal_n2());
  CHECK(catalog_system("macaulay") == macaulay());
  CHECK(catalog_system("mixed_pair_cc2") == mixed_pair_cc_order2());
}
