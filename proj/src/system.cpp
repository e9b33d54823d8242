#include "jetseq/system.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace jetseq {

namespace {

// Rows of `eqs` (over `source`) shifted by every multi-index in `shifts`,
// re-indexed into `target`. Works for full jet frames and symbol frames
// alike since only index_of is needed.
template <typename SourceFrame, typename TargetFrame>
RationalMatrix shift_rows(const RationalMatrix& eqs, const SourceFrame& source,
                          const TargetFrame& target,
                          const std::vector<MultiIndex>& shifts) {
  RationalMatrix out(eqs.rows() * static_cast<int>(shifts.size()), target.size());
  int row_out = 0;
  for (const MultiIndex& nu : shifts) {
    for (int r = 0; r < eqs.rows(); ++r, ++row_out) {
      for (int c = 0; c < eqs.cols(); ++c) {
        const Rational& v = eqs.at(r, c);
        if (v == 0) continue;
        const JetCoord& jc = source.coord(c);
        out.at(row_out, target.index_of(jc.unknown, jc.mu.plus(nu))) = v;
      }
    }
  }
  return out;
}

}  // namespace

LinearJetSystem LinearJetSystem::from_equations(const JetFrame& frame,
                                                const std::vector<Equation>& eqs) {
  RationalMatrix raw(static_cast<int>(eqs.size()), frame.size());
  for (int r = 0; r < static_cast<int>(eqs.size()); ++r) {
    for (const JetTerm& t : eqs[r]) {
      raw.at(r, frame.index_of(t.unknown, t.mu)) += t.coeff;
    }
  }
  return from_matrix(frame, raw);
}

LinearJetSystem LinearJetSystem::from_matrix(const JetFrame& frame,
                                             const RationalMatrix& raw) {
  if (raw.cols() != frame.size()) {
    throw std::invalid_argument("LinearJetSystem: matrix width does not match frame");
  }
  RrefResult red = rref(raw);
  return LinearJetSystem(frame, std::move(red.mat), std::move(red.pivot_cols));
}

SymbolSpace SymbolSpace::from_matrix(const SymbolFrame& frame, const RationalMatrix& raw) {
  if (raw.cols() != frame.size()) {
    throw std::invalid_argument("SymbolSpace: matrix width does not match frame");
  }
  return SymbolSpace(frame, rref(raw).mat);
}

RationalMatrix SymbolSpace::basis() const { return kernel_basis(eqs_); }

RationalMatrix SymbolSpace::shifted_equations(int r, const SymbolFrame& target) const {
  return shift_rows(eqs_, frame_, target, indices_of_degree(frame_.base_dim(), r));
}

SymbolSpace SymbolSpace::prolonged(int r) const {
  if (r < 0) throw std::invalid_argument("SymbolSpace::prolonged: negative step");
  SymbolFrame target(frame_.base_dim(), frame_.fiber_dim(), degree() + r);
  return from_matrix(target, shifted_equations(r, target));
}

long SymbolSpace::prolonged_dim(int r, const RankPolicy& policy) const {
  if (r < 0) throw std::invalid_argument("SymbolSpace::prolonged_dim: negative step");
  SymbolFrame target(frame_.base_dim(), frame_.fiber_dim(), degree() + r);
  return target.size() - rank_of(shifted_equations(r, target), policy);
}

SymbolSpace ambient_symbol(int n, int m, int degree) {
  SymbolFrame frame(n, m, degree);
  return SymbolSpace::from_matrix(frame, RationalMatrix(0, frame.size()));
}

RationalMatrix prolongation_matrix(const LinearJetSystem& s, int r) {
  if (r < 0) throw std::invalid_argument("prolongation_matrix: negative step");
  const JetFrame& f = s.frame();
  JetFrame target(f.base_dim(), f.fiber_dim(), f.order() + r);
  std::vector<MultiIndex> shifts;
  for (int d = 0; d <= r; ++d) {
    for (MultiIndex& mu : indices_of_degree(f.base_dim(), d)) shifts.push_back(std::move(mu));
  }
  return shift_rows(s.equations(), f, target, shifts);
}

LinearJetSystem prolong(const LinearJetSystem& s, int r) {
  const JetFrame& f = s.frame();
  JetFrame target(f.base_dim(), f.fiber_dim(), f.order() + r);
  return LinearJetSystem::from_matrix(target, prolongation_matrix(s, r));
}

LinearJetSystem project(const LinearJetSystem& s, int target_order) {
  const JetFrame& f = s.frame();
  if (target_order < 0 || target_order > f.order()) {
    throw std::invalid_argument("project: target order out of range");
  }
  JetFrame target(f.base_dim(), f.fiber_dim(), target_order);
  // Pivot columns ascend with row index and the frame is degree-descending,
  // so the rows that survive the projection form a suffix.
  const RationalMatrix& eqs = s.equations();
  int cut = f.first_index_of_degree_at_most(target_order);
  int first_kept = 0;
  while (first_kept < eqs.rows() && s.pivot_columns()[first_kept] < cut) ++first_kept;

  RationalMatrix raw(eqs.rows() - first_kept, target.size());
  for (int r = first_kept; r < eqs.rows(); ++r) {
    for (int c = cut; c < eqs.cols(); ++c) {
      const Rational& v = eqs.at(r, c);
      if (v == 0) continue;
      const JetCoord& jc = f.coord(c);
      raw.at(r - first_kept, target.index_of(jc.unknown, jc.mu)) = v;
    }
  }
  return LinearJetSystem::from_matrix(target, raw);
}

SymbolSpace symbol_at(const LinearJetSystem& s, int level) {
  const JetFrame& f = s.frame();
  if (level < f.order()) {
    throw std::invalid_argument("symbol_at: level below system order");
  }
  SymbolFrame base(f.base_dim(), f.fiber_dim(), f.order());
  // Degree-q coordinates are the frame prefix; rows with a top-degree pivot
  // are the row prefix. Their top-degree block is the symbol at order q.
  int cut = f.first_index_of_degree_at_most(f.order() - 1);
  int top_rows = 0;
  while (top_rows < s.equation_count() && s.pivot_columns()[top_rows] < cut) ++top_rows;

  RationalMatrix raw(top_rows, base.size());
  for (int r = 0; r < top_rows; ++r) {
    for (int c = 0; c < cut; ++c) raw.at(r, c) = s.equations().at(r, c);
  }
  return SymbolSpace::from_matrix(base, raw).prolonged(level - f.order());
}

std::vector<JetCoord> parametric_jets(const LinearJetSystem& s) {
  std::vector<bool> is_pivot(s.frame().size(), false);
  for (int p : s.pivot_columns()) is_pivot[p] = true;
  std::vector<JetCoord> out;
  for (int i = 0; i < s.frame().size(); ++i) {
    if (!is_pivot[i]) out.push_back(s.frame().coord(i));
  }
  return out;
}

long solution_dim_at(const LinearJetSystem& s, int level, const RankPolicy& policy) {
  const JetFrame& f = s.frame();
  if (level < f.order()) {
    throw std::invalid_argument("solution_dim_at: level below system order");
  }
  long ambient = dim_jet(f.base_dim(), f.fiber_dim(), level);
  return ambient - rank_of(prolongation_matrix(s, level - f.order()), policy);
}

FIReport is_formally_integrable(const LinearJetSystem& s, int bound,
                                const RankPolicy& policy) {
  if (bound < 0) throw std::invalid_argument("is_formally_integrable: negative bound");
  FIReport report;
  report.bound = bound;
  report.formally_integrable = true;

  for (int r = 0; r <= bound + 1; ++r) {
    report.solution_dims.push_back(solution_dim_at(s, s.order() + r, policy));
  }
  SymbolSpace base = symbol_at(s, s.order());
  for (int r = 0; r <= bound; ++r) {
    long g_next = base.prolonged_dim(r + 1, policy);
    long projected = report.solution_dims[r + 1] - g_next;
    if (projected > report.solution_dims[r]) {
      throw std::logic_error("is_formally_integrable: inconsistent ranks");
    }
    if (projected < report.solution_dims[r]) {
      report.formally_integrable = false;
      report.failing_prolongation = r;
      break;
    }
  }
  return report;
}

LinearJetSystem change_coordinates(const LinearJetSystem& s, const RationalMatrix& a) {
  const JetFrame& f = s.frame();
  int n = f.base_dim();
  if (a.rows() != n || a.cols() != n) {
    throw std::invalid_argument("change_coordinates: matrix must be n x n");
  }
  if (rank_exact(a) != n) {
    throw std::invalid_argument("change_coordinates: matrix must be invertible");
  }

  // Substitute each derivation symbol d_i by sum_j a(i,j) d'_j and expand.
  // A monomial d^mu becomes the product of mu_i copies of row i of a; the
  // expansion is collected as a polynomial keyed on new exponent vectors.
  using Poly = std::map<std::vector<int>, Rational>;
  auto multiply_by_row = [&](const Poly& p, int i) {
    Poly out;
    for (const auto& [e, c] : p) {
      for (int j = 0; j < n; ++j) {
        if (a.at(i, j) == 0) continue;
        std::vector<int> e2 = e;
        ++e2[j];
        out[std::move(e2)] += c * a.at(i, j);
      }
    }
    return out;
  };

  const RationalMatrix& eqs = s.equations();
  RationalMatrix raw(eqs.rows(), f.size());
  for (int r = 0; r < eqs.rows(); ++r) {
    std::map<std::pair<int, std::vector<int>>, Rational> row;
    for (int c = 0; c < eqs.cols(); ++c) {
      const Rational& v = eqs.at(r, c);
      if (v == 0) continue;
      const JetCoord& jc = f.coord(c);
      Poly p{{std::vector<int>(n, 0), rat(1)}};
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < jc.mu.exp[i]; ++k) p = multiply_by_row(p, i);
      }
      for (const auto& [e, coeff] : p) row[{jc.unknown, e}] += v * coeff;
    }
    for (const auto& [key, coeff] : row) {
      if (coeff == 0) continue;
      raw.at(r, f.index_of(key.first, MultiIndex(key.second))) = coeff;
    }
  }
  return LinearJetSystem::from_matrix(f, raw);
}

}  // namespace jetseq
