#include "jetseq/catalog.hpp"

#include <map>
#include <stdexcept>

namespace jetseq {

FlatMetric FlatMetric::euclidean(int n) {
  if (n < 1) throw std::invalid_argument("metric dimension must be positive");
  return FlatMetric{n, std::vector<int>(static_cast<size_t>(n), 1)};
}

FlatMetric FlatMetric::minkowski(int n) {
  FlatMetric m = euclidean(n);
  m.signature[0] = -1;
  return m;
}

namespace {

MultiIndex unit(int n, int i) {
  MultiIndex mu(n);
  return mu.shifted(i);
}

}  // namespace

LinearJetSystem killing_flat(const FlatMetric& metric) {
  const int n = metric.n;
  std::vector<Equation> eqs;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Equation eq;
      eq.push_back({metric.omega(j, j), j, unit(n, i)});
      eq.push_back({metric.omega(i, i), i, unit(n, j)});
      eqs.push_back(eq);
    }
  }
  return LinearJetSystem::from_equations(JetFrame(n, n, 1), eqs);
}

LinearJetSystem conformal_killing_flat(const FlatMetric& metric) {
  const int n = metric.n;
  if (n < 3) throw std::invalid_argument("conformal_killing_flat needs n >= 3");
  const Rational trace_coeff = rat(2) / rat(n);
  std::vector<Equation> eqs;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Equation eq;
      eq.push_back({metric.omega(j, j), j, unit(n, i)});
      eq.push_back({metric.omega(i, i), i, unit(n, j)});
      if (i == j) {
        for (int r = 0; r < n; ++r) eq.push_back({-trace_coeff * metric.omega(i, i), r, unit(n, r)});
      }
      eqs.push_back(eq);
    }
  }
  return LinearJetSystem::from_equations(JetFrame(n, n, 1), eqs);
}

LinearJetSystem conformal_n1() {
  MultiIndex mu(1);
  mu.exp[0] = 3;
  return LinearJetSystem::from_equations(JetFrame(1, 1, 3), {{{rat(1), 0, mu}}});
}

LinearJetSystem conformal_n2() {
  auto mi = [](int a, int b) {
    MultiIndex mu(2);
    mu.exp[0] = a;
    mu.exp[1] = b;
    return mu;
  };
  std::vector<Equation> eqs;
  // All third-order derivatives of both components vanish.
  for (int k = 0; k < 2; ++k)
    for (int a = 0; a <= 3; ++a) eqs.push_back({{rat(1), k, mi(a, 3 - a)}});
  // Second-order consequences of the first-order pair.
  eqs.push_back({{rat(1), 1, mi(0, 2)}, {rat(-1), 0, mi(1, 1)}});
  eqs.push_back({{rat(1), 0, mi(0, 2)}, {rat(1), 1, mi(1, 1)}});
  eqs.push_back({{rat(1), 1, mi(1, 1)}, {rat(-1), 0, mi(2, 0)}});
  eqs.push_back({{rat(1), 0, mi(1, 1)}, {rat(1), 1, mi(2, 0)}});
  // Cauchy-Riemann pair.
  eqs.push_back({{rat(1), 1, mi(0, 1)}, {rat(-1), 0, mi(1, 0)}});
  eqs.push_back({{rat(1), 0, mi(0, 1)}, {rat(1), 1, mi(1, 0)}});
  return LinearJetSystem::from_equations(JetFrame(2, 2, 3), eqs);
}

LinearJetSystem macaulay() {
  auto mi = [](int a, int b, int c) {
    MultiIndex mu(3);
    mu.exp = {a, b, c};
    return mu;
  };
  std::vector<Equation> eqs = {
      {{rat(1), 0, mi(0, 0, 2)}},
      {{rat(1), 0, mi(0, 1, 1)}, {rat(-1), 0, mi(2, 0, 0)}},
      {{rat(1), 0, mi(0, 2, 0)}},
  };
  return LinearJetSystem::from_equations(JetFrame(3, 1, 2), eqs);
}

LinearJetSystem macaulay_variant() {
  auto mi = [](int a, int b, int c) {
    MultiIndex mu(3);
    mu.exp = {a, b, c};
    return mu;
  };
  std::vector<Equation> eqs = {
      {{rat(1), 0, mi(0, 0, 2)}, {rat(-1), 0, mi(2, 0, 0)}},
      {{rat(1), 0, mi(0, 1, 1)}},
      {{rat(1), 0, mi(0, 2, 0)}, {rat(-1), 0, mi(2, 0, 0)}},
  };
  return LinearJetSystem::from_equations(JetFrame(3, 1, 2), eqs);
}

namespace {

MultiIndex mi2(int a, int b) {
  MultiIndex mu(2);
  mu.exp[0] = a;
  mu.exp[1] = b;
  return mu;
}

}  // namespace

LinearJetSystem mixed_pair() {
  std::vector<Equation> eqs = {
      {{rat(1), 0, mi2(0, 2)}},
      {{rat(1), 0, mi2(1, 1)}, {rat(-1), 0, mi2(0, 0)}},
  };
  return LinearJetSystem::from_equations(JetFrame(2, 1, 2), eqs);
}

LinearJetSystem mixed_pair_cc_order2() {
  Equation c = {{rat(1), 0, mi2(1, 1)}, {rat(-1), 0, mi2(0, 0)}, {rat(-1), 1, mi2(0, 2)}};
  return LinearJetSystem::from_equations(JetFrame(2, 2, 2), {c});
}

LinearJetSystem mixed_pair_cc_order4() {
  Equation u = {{rat(1), 0, mi2(2, 2)},
                {rat(-1), 1, mi2(1, 3)},
                {rat(-1), 1, mi2(0, 2)},
                {rat(-1), 0, mi2(0, 0)}};
  Equation v = {{rat(1), 0, mi2(3, 1)}, {rat(-1), 0, mi2(2, 0)}, {rat(-1), 1, mi2(2, 2)}};
  return LinearJetSystem::from_equations(JetFrame(2, 2, 4), {u, v});
}

LinearJetSystem mixed_pair_cc_syzygy() {
  Equation w = {{rat(-1), 0, mi2(2, 0)}, {rat(1), 1, mi2(1, 1)}, {rat(1), 1, mi2(0, 0)}};
  return LinearJetSystem::from_equations(JetFrame(2, 2, 2), {w});
}

std::vector<PolyVectorField> elations(const FlatMetric& metric) {
  const int n = metric.n;
  Polynomial xsq = Polynomial::constant(n, rat(0));
  for (int t = 0; t < n; ++t) {
    Polynomial xt = Polynomial::variable(n, t);
    xsq += xt * xt * metric.omega(t, t);
  }
  std::vector<PolyVectorField> fields;
  for (int s = 0; s < n; ++s) {
    PolyVectorField theta;
    theta.components.reserve(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) {
      Polynomial comp = Polynomial::variable(n, s) * Polynomial::variable(n, r) * metric.omega(s, s);
      if (r == s) comp -= xsq * rat(1, 2);
      theta.components.push_back(comp);
    }
    fields.push_back(theta);
  }
  return fields;
}

std::vector<PolyVectorField> conformal_basis_n2() {
  auto field = [](Polynomial a, Polynomial b) {
    PolyVectorField f;
    f.components = {std::move(a), std::move(b)};
    return f;
  };
  const Polynomial one = Polynomial::constant(2, rat(1));
  const Polynomial zero = Polynomial::constant(2, rat(0));
  const Polynomial x1 = Polynomial::variable(2, 0);
  const Polynomial x2 = Polynomial::variable(2, 1);
  std::vector<PolyVectorField> basis;
  basis.push_back(field(one, zero));            // d/dx1
  basis.push_back(field(zero, one));            // d/dx2
  basis.push_back(field(zero - x2, x1));        // rotation
  basis.push_back(field(x1, x2));               // dilatation
  for (auto& theta : elations(FlatMetric::euclidean(2))) basis.push_back(theta);
  return basis;
}

std::vector<std::string> catalog_names() {
  return {"killing2",   "killing3",   "killing4",   "killing5",  "conformal1",
          "conformal2", "conformal3", "conformal4", "conformal5", "macaulay",
          "macaulay_variant", "mixed_pair", "mixed_pair_cc2", "mixed_pair_cc4",
          "mixed_pair_syzygy"};
}

LinearJetSystem catalog_system(const std::string& name) {
  if (name == "macaulay") return macaulay();
  if (name == "macaulay_variant") return macaulay_variant();
  if (name == "mixed_pair") return mixed_pair();
  if (name == "mixed_pair_cc2") return mixed_pair_cc_order2();
  if (name == "mixed_pair_cc4") return mixed_pair_cc_order4();
  if (name == "mixed_pair_syzygy") return mixed_pair_cc_syzygy();
  if (name == "conformal1") return conformal_n1();
  if (name == "conformal2") return conformal_n2();
  if (name.rfind("killing", 0) == 0) {
    int n = std::stoi(name.substr(7));
    if (n < 2 || n > 9) throw std::invalid_argument("killing systems available for n in [2,9]");
    return killing_flat(FlatMetric::euclidean(n));
  }
  if (name.rfind("conformal", 0) == 0) {
    int n = std::stoi(name.substr(9));
    if (n < 3 || n > 9) throw std::invalid_argument("conformal systems available for n in [1,9]");
    return conformal_killing_flat(FlatMetric::euclidean(n));
  }
  throw std::invalid_argument("unknown catalog system: " + name);
}

}  // namespace jetseq
