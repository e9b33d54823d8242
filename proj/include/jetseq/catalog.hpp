#pragma once
// Built-in systems: flat Killing and conformal Killing operators, the
// Macaulay examples, a mixed-order pair with hand-written compatibility
// operators, and the polynomial generator sets used to cross-check them.

#include <string>
#include <vector>

#include "jetseq/poly.hpp"
#include "jetseq/system.hpp"

namespace jetseq {

// Constant diagonal metric with entries +-1. Flatness is structural: the
// Christoffel symbols vanish, so every derived system has constant
// coefficients.
struct FlatMetric {
  int n = 0;
  std::vector<int> signature;  // diagonal entries, each +1 or -1

  static FlatMetric euclidean(int n);
  static FlatMetric minkowski(int n);  // (-1, +1, ..., +1)
  Rational omega(int i, int j) const { return i == j ? rat(signature[i]) : rat(0); }
};

// omega_jj xi^j_i + omega_ii xi^i_j = 0 for i <= j; first order, m = n.
LinearJetSystem killing_flat(const FlatMetric& metric);

// Trace-free variant: omega_jj xi^j_i + omega_ii xi^i_j
//                     - (2/n) omega_ij xi^r_r = 0, for n >= 3.
// The 2/n coefficient is the trace-free normalization; with it the row space
// is independent of any conformal rescaling and has rank n(n+1)/2 - 1.
LinearJetSystem conformal_killing_flat(const FlatMetric& metric);

// One-dimensional conformal chain endpoint: the single equation of third
// order in one unknown.
LinearJetSystem conformal_n1();

// Two-dimensional case: Cauchy-Riemann pair, its four second-order
// consequences, and the eight homogeneous third-order equations.
LinearJetSystem conformal_n2();

LinearJetSystem macaulay();          // y_33 = 0, y_23 - y_11 = 0, y_22 = 0
LinearJetSystem macaulay_variant();  // y_33 - y_11 = 0, y_23 = 0, y_22 - y_11 = 0
LinearJetSystem mixed_pair();        // y_22 = 0, y_12 - y = 0

// Hand-written compatibility operators for the mixed pair, written over jets
// of the two right-hand sides (unknown 0 = u, unknown 1 = v):
//   order 2:  C = d12 u - u - d22 v
//   order 4:  U = d1122 u - d1222 v - d22 v - u,  V = d1112 u - d11 u - d1122 v
// and the relation row over jets of (U, V): W = -d11 U + d12 V + V.
LinearJetSystem mixed_pair_cc_order2();
LinearJetSystem mixed_pair_cc_order4();
LinearJetSystem mixed_pair_cc_syzygy();

// theta_s = -1/2 x^2 d/dx_s + omega_st x^t x^r d/dx_r with x^2 the metric
// square. Quadratic fields; pairwise commuting; divergence n*omega_st*x^t.
std::vector<PolyVectorField> elations(const FlatMetric& metric);

// Two translations, the rotation, the dilatation, then the two elations.
std::vector<PolyVectorField> conformal_basis_n2();

std::vector<std::string> catalog_names();
LinearJetSystem catalog_system(const std::string& name);  // throws on unknown name

}  // namespace jetseq
