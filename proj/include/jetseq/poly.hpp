#pragma once
// Polynomials with rational coefficients, polynomial vector fields, and the
// bridge between actual polynomial solutions and the jet-space picture.

#include <map>
#include <string>
#include <vector>

#include "jetseq/exactalg.hpp"
#include "jetseq/system.hpp"

namespace jetseq {

class Polynomial {
 public:
  explicit Polynomial(int vars = 0) : vars_(vars) {}

  static Polynomial constant(int vars, const Rational& c);
  static Polynomial variable(int vars, int i);
  static Polynomial monomial(const std::vector<int>& exp, const Rational& c);

  int vars() const { return vars_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for the zero polynomial
  const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
  Rational coefficient(const std::vector<int>& exp) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  Polynomial operator*(const Polynomial& rhs) const;
  bool operator==(const Polynomial& rhs) const = default;

  Polynomial derivative(int i) const;
  Rational evaluate(const std::vector<Rational>& x) const;
  std::string to_string() const;  // "x1^2*x3 - 1/2*x2"

 private:
  void add_term(const std::vector<int>& exp, const Rational& c);

  int vars_;
  std::map<std::vector<int>, Rational> terms_;  // zero coefficients dropped
};

// First-order differential operator sum_i comp[i] * d/dx_i.
struct PolyVectorField {
  std::vector<Polynomial> components;

  int vars() const { return static_cast<int>(components.size()); }
  bool operator==(const PolyVectorField&) const = default;
};

PolyVectorField lie_bracket(const PolyVectorField& x, const PolyVectorField& y);

// Candidate solution: one polynomial per unknown.
using PolySection = std::vector<Polynomial>;

// Residual of each stored equation applied to u, with jet coordinates acting
// as honest partial derivatives. All residuals vanish iff u solves the system.
std::vector<Polynomial> apply_system(const LinearJetSystem& s, const PolySection& u);
bool is_polynomial_solution(const LinearJetSystem& s, const PolySection& u);

// Jet prolongation of u as polynomial functions: entry at frame position
// (k, mu) is d^mu u_k.
std::vector<Polynomial> holonomic_section(const JetFrame& frame, const PolySection& u);

// Spencer operator of a polynomial section over `frame` (order q+1 >= 1).
// Output is indexed by direction i and position c in the order-q frame as
// i * |J_q frame| + c, with value d/dx_i sigma_{(k,mu)} - sigma_{(k,mu+1_i)}.
// Holonomic sections are exactly the sections this operator kills.
std::vector<Polynomial> spencer_operator(const JetFrame& frame,
                                         const std::vector<Polynomial>& sigma);

struct PolySolutionReport {
  int degree = 0;       // bound d on the solution degree
  long dim = 0;         // dimension of { solutions of degree <= d }
  bool complete = false;  // certified that these are all formal solutions
};

// Taylor coefficients of a degree <= d solution satisfy the prolonged
// equations with all coordinates of degree > d set to zero, so the count is
// a corank of a column-restricted prolongation matrix. Completeness is
// certified for formally integrable systems whose symbol hits zero at some
// degree t <= d+1 with matching dimension (projections are then bijections,
// so the formal solution space has that same finite dimension).
PolySolutionReport polynomial_solutions(const LinearJetSystem& s, int degree,
                                        const RankPolicy& = {});

// Basis of the degree <= d solution space.
std::vector<PolySection> polynomial_solution_basis(const LinearJetSystem& s, int degree);

}  // namespace jetseq
