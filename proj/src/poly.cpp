#include "jetseq/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace jetseq {

namespace {

Polynomial mu_derivative(Polynomial p, const MultiIndex& mu) {
  for (int i = 0; i < mu.size(); ++i) {
    for (int k = 0; k < mu.exp[i]; ++k) p = p.derivative(i);
  }
  return p;
}

Rational inverse_factorial(const std::vector<int>& exp) {
  BigInt f = 1;
  for (int e : exp) {
    BigInt t;
    mpz_fac_ui(t.get_mpz_t(), static_cast<unsigned long>(e));
    f *= t;
  }
  return Rational(1) / Rational(f);
}

}  // namespace

Polynomial Polynomial::constant(int vars, const Rational& c) {
  Polynomial p(vars);
  p.add_term(std::vector<int>(vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int vars, int i) {
  if (i < 0 || i >= vars) throw std::out_of_range("Polynomial::variable");
  std::vector<int> exp(vars, 0);
  exp[i] = 1;
  return monomial(exp, rat(1));
}

Polynomial Polynomial::monomial(const std::vector<int>& exp, const Rational& c) {
  Polynomial p(static_cast<int>(exp.size()));
  p.add_term(exp, c);
  return p;
}

void Polynomial::add_term(const std::vector<int>& exp, const Rational& c) {
  if (static_cast<int>(exp.size()) != vars_) {
    throw std::invalid_argument("Polynomial: exponent arity mismatch");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(exp, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [exp, c] : terms_) {
    int sum = 0;
    for (int e : exp) sum += e;
    if (sum > d) d = sum;
  }
  return d;
}

Rational Polynomial::coefficient(const std::vector<int>& exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (vars_ != rhs.vars_) throw std::invalid_argument("Polynomial: arity mismatch");
  for (const auto& [exp, c] : rhs.terms_) add_term(exp, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (vars_ != rhs.vars_) throw std::invalid_argument("Polynomial: arity mismatch");
  for (const auto& [exp, c] : rhs.terms_) add_term(exp, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [exp, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (vars_ != rhs.vars_) throw std::invalid_argument("Polynomial: arity mismatch");
  Polynomial out(vars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      std::vector<int> e = ea;
      for (int i = 0; i < vars_; ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::derivative(int i) const {
  if (i < 0 || i >= vars_) throw std::out_of_range("Polynomial::derivative");
  Polynomial out(vars_);
  for (const auto& [exp, c] : terms_) {
    if (exp[i] == 0) continue;
    std::vector<int> e = exp;
    --e[i];
    out.add_term(e, c * rat(exp[i]));
  }
  return out;
}

Rational Polynomial::evaluate(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != vars_) {
    throw std::invalid_argument("Polynomial::evaluate: arity mismatch");
  }
  Rational sum = 0;
  for (const auto& [exp, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < vars_; ++i) {
      for (int k = 0; k < exp[i]; ++k) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [exp, c] : terms_) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    bool has_vars = false;
    std::ostringstream mono;
    for (int i = 0; i < vars_; ++i) {
      if (exp[i] == 0) continue;
      if (has_vars) mono << "*";
      mono << "x" << (i + 1);
      if (exp[i] > 1) mono << "^" << exp[i];
      has_vars = true;
    }
    if (!has_vars) {
      out << mag.get_str();
    } else {
      if (mag != 1) out << mag.get_str() << "*";
      out << mono.str();
    }
  }
  return out.str();
}

PolyVectorField lie_bracket(const PolyVectorField& x, const PolyVectorField& y) {
  int n = x.vars();
  if (n != y.vars()) throw std::invalid_argument("lie_bracket: arity mismatch");
  PolyVectorField out;
  out.components.reserve(n);
  for (int i = 0; i < n; ++i) {
    Polynomial c(n);
    for (int j = 0; j < n; ++j) {
      c += x.components[j] * y.components[i].derivative(j);
      c -= y.components[j] * x.components[i].derivative(j);
    }
    out.components.push_back(std::move(c));
  }
  return out;
}

std::vector<Polynomial> apply_system(const LinearJetSystem& s, const PolySection& u) {
  const JetFrame& f = s.frame();
  if (static_cast<int>(u.size()) != f.fiber_dim()) {
    throw std::invalid_argument("apply_system: wrong number of unknowns");
  }
  std::vector<Polynomial> residuals;
  residuals.reserve(s.equation_count());
  for (int r = 0; r < s.equation_count(); ++r) {
    Polynomial res(f.base_dim());
    for (int c = 0; c < f.size(); ++c) {
      const Rational& v = s.equations().at(r, c);
      if (v == 0) continue;
      const JetCoord& jc = f.coord(c);
      res += mu_derivative(u[jc.unknown], jc.mu) * v;
    }
    residuals.push_back(std::move(res));
  }
  return residuals;
}

bool is_polynomial_solution(const LinearJetSystem& s, const PolySection& u) {
  for (const Polynomial& r : apply_system(s, u)) {
    if (!r.is_zero()) return false;
  }
  return true;
}

std::vector<Polynomial> holonomic_section(const JetFrame& frame, const PolySection& u) {
  if (static_cast<int>(u.size()) != frame.fiber_dim()) {
    throw std::invalid_argument("holonomic_section: wrong number of unknowns");
  }
  std::vector<Polynomial> out;
  out.reserve(frame.size());
  for (int c = 0; c < frame.size(); ++c) {
    const JetCoord& jc = frame.coord(c);
    out.push_back(mu_derivative(u[jc.unknown], jc.mu));
  }
  return out;
}

std::vector<Polynomial> spencer_operator(const JetFrame& frame,
                                         const std::vector<Polynomial>& sigma) {
  if (frame.order() < 1) {
    throw std::invalid_argument("spencer_operator: frame order must be >= 1");
  }
  if (static_cast<int>(sigma.size()) != frame.size()) {
    throw std::invalid_argument("spencer_operator: section size mismatch");
  }
  int n = frame.base_dim();
  JetFrame target(n, frame.fiber_dim(), frame.order() - 1);
  std::vector<Polynomial> out(static_cast<std::size_t>(n) * target.size(), Polynomial(n));
  for (int c = 0; c < target.size(); ++c) {
    const JetCoord& jc = target.coord(c);
    int src = frame.index_of(jc.unknown, jc.mu);
    for (int i = 0; i < n; ++i) {
      int up = frame.index_of(jc.unknown, jc.mu.shifted(i));
      out[static_cast<std::size_t>(i) * target.size() + c] =
          sigma[src].derivative(i) - sigma[up];
    }
  }
  return out;
}

namespace {

// Prolongation matrix to level q+d with the columns of degree > d removed.
// A degree <= d solution has zero Taylor coefficients there, so its
// coefficient vector over J_d must lie in the kernel of this block.
RationalMatrix taylor_condition_matrix(const LinearJetSystem& s, int degree, int* cut_out) {
  const JetFrame& f = s.frame();
  JetFrame big(f.base_dim(), f.fiber_dim(), f.order() + degree);
  RationalMatrix m = prolongation_matrix(s, degree);
  int cut = big.first_index_of_degree_at_most(degree);
  if (cut_out != nullptr) *cut_out = cut;
  RationalMatrix sub(m.rows(), m.cols() - cut);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = cut; c < m.cols(); ++c) sub.at(r, c - cut) = m.at(r, c);
  }
  return sub;
}

}  // namespace

PolySolutionReport polynomial_solutions(const LinearJetSystem& s, int degree,
                                        const RankPolicy& policy) {
  if (degree < 0) throw std::invalid_argument("polynomial_solutions: negative degree");
  const JetFrame& f = s.frame();
  PolySolutionReport report;
  report.degree = degree;
  report.dim = dim_jet(f.base_dim(), f.fiber_dim(), degree) -
               rank_of(taylor_condition_matrix(s, degree, nullptr), policy);

  // Completeness certificate: formal integrability plus a vanishing symbol
  // degree t <= degree+1 with dim R_t equal to the polynomial count.
  SymbolSpace base = symbol_at(s, f.order());
  for (int t = f.order(); t <= degree + 1; ++t) {
    if (base.prolonged_dim(t - f.order(), policy) != 0) continue;
    FIReport fi = is_formally_integrable(s, std::max(0, t - f.order()) + 1, policy);
    if (fi.formally_integrable && solution_dim_at(s, t, policy) == report.dim) {
      report.complete = true;
    }
    break;
  }
  return report;
}

std::vector<PolySection> polynomial_solution_basis(const LinearJetSystem& s, int degree) {
  if (degree < 0) throw std::invalid_argument("polynomial_solution_basis: negative degree");
  const JetFrame& f = s.frame();
  int n = f.base_dim();
  JetFrame big(n, f.fiber_dim(), f.order() + degree);
  int cut = 0;
  RationalMatrix basis = kernel_basis(taylor_condition_matrix(s, degree, &cut));

  std::vector<PolySection> out;
  for (int b = 0; b < basis.cols(); ++b) {
    PolySection u(f.fiber_dim(), Polynomial(n));
    for (int c = 0; c < basis.rows(); ++c) {
      const Rational& v = basis.at(c, b);
      if (v == 0) continue;
      const JetCoord& jc = big.coord(cut + c);
      u[jc.unknown] += Polynomial::monomial(jc.mu.exp, v * inverse_factorial(jc.mu.exp));
    }
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace jetseq
