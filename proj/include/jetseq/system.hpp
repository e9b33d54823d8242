#pragma once
// Linear constant-coefficient PDE systems as subspaces of jet space.
//
// A system of order q on m unknowns in n variables is stored as the reduced
// row echelon form of its equations over the frame order of J_q. Because the
// frame puts high degrees first and rref is canonical, two systems are equal
// as row spaces exactly when their stored matrices coincide, projections drop
// out of the echelon structure, and the top-degree block of the top-pivot
// rows is the symbol.

#include <optional>
#include <vector>

#include "jetseq/exactalg.hpp"
#include "jetseq/jetspace.hpp"

namespace jetseq {

struct JetTerm {
  Rational coeff;
  int unknown;  // 0-based
  MultiIndex mu;
  bool operator==(const JetTerm&) const = default;
};
using Equation = std::vector<JetTerm>;

class LinearJetSystem {
 public:
  static LinearJetSystem from_equations(const JetFrame& frame,
                                        const std::vector<Equation>& eqs);
  static LinearJetSystem from_matrix(const JetFrame& frame, const RationalMatrix& raw);

  const JetFrame& frame() const { return frame_; }
  const RationalMatrix& equations() const { return eqs_; }  // rref, no zero rows
  const std::vector<int>& pivot_columns() const { return pivots_; }

  int order() const { return frame_.order(); }
  int equation_count() const { return eqs_.rows(); }
  long solution_dim() const { return frame_.size() - eqs_.rows(); }

  bool operator==(const LinearJetSystem& rhs) const {
    return frame_ == rhs.frame_ && eqs_ == rhs.eqs_;
  }

 private:
  LinearJetSystem(JetFrame frame, RationalMatrix eqs, std::vector<int> pivots)
      : frame_(std::move(frame)), eqs_(std::move(eqs)), pivots_(std::move(pivots)) {}

  JetFrame frame_;
  RationalMatrix eqs_;
  std::vector<int> pivots_;
};

// Homogeneous piece of the solution space at one degree: kernel of rref'd
// equations over a SymbolFrame. Prolongation shifts the equations up.
class SymbolSpace {
 public:
  static SymbolSpace from_matrix(const SymbolFrame& frame, const RationalMatrix& raw);

  const SymbolFrame& frame() const { return frame_; }
  const RationalMatrix& equations() const { return eqs_; }
  int degree() const { return frame_.degree(); }
  long dim() const { return frame_.size() - eqs_.rows(); }
  RationalMatrix basis() const;  // columns spanning the kernel

  SymbolSpace prolonged(int r) const;
  // Rank-only prolongation: dim of the degree (degree()+r) piece without
  // materializing its rref (the policy may route the rank mod p).
  long prolonged_dim(int r, const RankPolicy& policy = {}) const;

 private:
  SymbolSpace(SymbolFrame frame, RationalMatrix eqs)
      : frame_(std::move(frame)), eqs_(std::move(eqs)) {}
  RationalMatrix shifted_equations(int r, const SymbolFrame& target) const;

  SymbolFrame frame_;
  RationalMatrix eqs_;
};

// Full degree-t piece with no equations (kernel of an empty matrix).
SymbolSpace ambient_symbol(int n, int m, int degree);

// Rows of the system shifted by all multi-indices of degree <= r, written
// over JetFrame(n, m, q+r). Row space = equations of the prolonged system.
RationalMatrix prolongation_matrix(const LinearJetSystem& s, int r);

LinearJetSystem prolong(const LinearJetSystem& s, int r);

// Equations of the projection to J_{target_order}: the rref rows whose pivot
// degree is <= target_order (echelon form guarantees those rows only touch
// coordinates of degree <= target_order).
LinearJetSystem project(const LinearJetSystem& s, int target_order);

// Symbol at `level` >= order: top-degree block at the system's own order,
// prolonged up. For constant coefficients the symbol of the prolongation is
// the prolongation of the symbol, so this is exact at every level.
SymbolSpace symbol_at(const LinearJetSystem& s, int level);

// Non-pivot coordinates, in frame order.
std::vector<JetCoord> parametric_jets(const LinearJetSystem& s);

long solution_dim_at(const LinearJetSystem& s, int level, const RankPolicy& policy = {});

struct FIReport {
  bool formally_integrable = false;  // verdict up to the checked bound
  int bound = 0;
  // First r (0-based) where projecting R_{q+r+1} cut R_{q+r}, if any.
  std::optional<int> failing_prolongation;
  std::vector<long> solution_dims;  // dim R_{q+r} for r = 0..bound+1
};

// Checks dim pi(R_{q+r+1}) == dim R_{q+r} for r = 0..bound using
// dim pi(R_{q+r+1}) = dim R_{q+r+1} - dim g_{q+r+1}.
FIReport is_formally_integrable(const LinearJetSystem& s, int bound,
                                const RankPolicy& policy = {});

// Invertible linear substitution of the derivation symbols:
// d_i -> sum_j A(i,j) d'_j. Solution dimensions are preserved at every
// prolongation order; the point of the operation is to move a system into
// generic (delta-regular) position.
LinearJetSystem change_coordinates(const LinearJetSystem& s, const RationalMatrix& a);

}  // namespace jetseq
