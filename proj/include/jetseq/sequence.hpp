#pragma once
// Differential operators, their compatibility conditions, and the bundle
// counts of the associated sequences.
//
// An operator is a row presentation: row tau of `rows()` is a linear
// combination of jet coordinates of the source bundle, and the target bundle
// has one component per row. Compatibility conditions of D are rows T over
// jets of the target with T composed with D identically zero; they are found
// as left kernels of the prolonged operator matrices.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jetseq/delta.hpp"
#include "jetseq/system.hpp"

namespace jetseq {

class OperatorHandle {
 public:
  // Rows as given; they are kept verbatim so that conditions discovered later
  // are expressed against these exact target components.
  static OperatorHandle from_rows(const JetFrame& source, const RationalMatrix& rows);
  // Uses the reduced equations of the system as the presentation.
  static OperatorHandle from_system(const LinearJetSystem& s);

  const JetFrame& source() const { return source_; }
  const RationalMatrix& rows() const { return rows_; }
  int order() const { return source_.order(); }
  int target_dim() const { return rows_.rows(); }
  LinearJetSystem kernel() const;  // the system { rows = 0 }

 private:
  OperatorHandle(JetFrame source, RationalMatrix rows)
      : source_(std::move(source)), rows_(std::move(rows)) {}
  JetFrame source_;
  RationalMatrix rows_;
};

// Matrix of the prolongation J_{q+r}(E) -> J_r(F): rows indexed by
// JetFrame(n, target_dim, r) coordinates (tau, nu), columns by J_{q+r}(E);
// the ((tau, nu), (k, mu + nu)) entry is the (k, mu) coefficient of row tau.
RationalMatrix operator_matrix(const OperatorHandle& d, int r);

// Top-degree block: SymbolFrame(n, m, q+r) -> SymbolFrame(n, target_dim, r),
// built from the order-q terms of the rows only.
RationalMatrix operator_symbol_matrix(const OperatorHandle& d, int r);

// All shifts of d's rows by multi-indices of degree <= r - order(), written
// over the order-r frame of d's source bundle. The span is independent of
// the presentation chosen for the row space.
RationalMatrix prolonged_rows(const OperatorHandle& d, int r);

// d's rows rewritten over the order-r frame of its source bundle, r >=
// order(), without shifts.
RationalMatrix embedded_rows(const OperatorHandle& d, int r);

struct CCReport {
  int order = 0;           // jet order of the target frame examined
  long total_dim = 0;      // dim of all conditions of order <= order
  long inherited_dim = 0;  // span of prolongations of the known generators
  long new_dim = 0;        // total_dim - inherited_dim
  // Reduced rows over JetFrame(n, target_dim, order) spanning a complement of
  // the inherited span inside the full condition space.
  RationalMatrix generators{0, 0};
};

// Conditions of order <= r modulo prolongations of `known` (operators over
// jets of d's target bundle, order <= r).
CCReport cc_at_order(const OperatorHandle& d, int r,
                     const std::vector<OperatorHandle>& known = {},
                     const RankPolicy& policy = {});

struct CCOrderBound {
  int order = 0;           // generating conditions live in order <= this
  int prolongations = 0;   // prolongations needed to reach a 2-acyclic symbol
  bool certified = false;  // the acyclicity verdict was definitive
};

// Order bound for generating compatibility conditions of the operator whose
// kernel is `s`: one more than the number of prolongations after which the
// symbol becomes 2-acyclic. Requires formal integrability (throws otherwise).
CCOrderBound cc_order_bound(const LinearJetSystem& s, int max_prolongations = 8,
                            int bound = 6, const RankPolicy& policy = {});

struct ResolutionStep {
  int order = 0;            // order of the operator produced at this step
  long target_dim = 0;      // dim of the full condition space at that order
  bool certified = false;   // the order came from a proved generator bound
  std::string stop_reason;  // "order-bound", "window", "budget"
};

struct SequenceReport {
  std::vector<long> bundles;          // dim E, dim F_0, dim F_1, ...
  std::vector<int> orders;            // operator orders along the chain
  std::vector<ResolutionStep> steps;  // one per condition operator built
  std::vector<OperatorHandle> operators;  // the chain itself, starting with D
  bool complete = false;     // the last operator admits no conditions
  bool certified = false;    // every stop in the chain was certified
  long euler_characteristic = 0;  // -dim E + F_0 - F_1 + ... (0 when complete)
  std::string notes;
};

// Builds the chain of compatibility operators starting from the reduced
// equations of `s`. Each next operator collects the FULL space of conditions
// at a single order: the certified generator bound when the current kernel is
// formally integrable and the bound is affordable, and otherwise the last
// order at which genuinely new conditions appeared, confirmed by `window`
// consecutive empty orders. `budget` caps both the number of chain steps and
// the order scanned per step; every stop records its reason.
SequenceReport resolution(const LinearJetSystem& s, int budget = 8, int window = 2,
                          const RankPolicy& policy = {});

struct TabularRow {
  int order = 0;  // pivot degree
  int cls = 0;    // pivot class for top-order rows, 0 for lower-order rows
  int count = 0;  // pivots sharing this (order, class)
  int dots = 0;   // non-multiplicative variables per row
};

struct JanetTabular {
  int n = 0;
  std::vector<TabularRow> rows;  // order descending, class descending
};

// Pivot census of an involutive system in the coordinates given. Throws when
// the character test fails without coordinate changes, since the dot counts
// are only meaningful in generic position.
JanetTabular janet_tabular(const LinearJetSystem& s, const RankPolicy& policy = {});

// F_1..F_n as sums of binomial(dots, k) over the tabular rows.
std::vector<long> janet_bundles_by_dots(const JanetTabular& t);

// C_0..C_n: C_0 = dim R_q and
// C_r = binom(n,r) * dim R_q - rank of the boundary on wedge^{r-1} (x) g_{q+1}.
std::vector<long> spencer_bundles(const LinearJetSystem& s, const RankPolicy& policy = {});

// Same shape with the full jet space in place of R_q.
std::vector<long> hybrid_bundles(const LinearJetSystem& s, const RankPolicy& policy = {});

struct DiagramReport {
  long dim_e = 0;
  std::vector<long> spencer;  // C_0..C_n
  std::vector<long> hybrid;   // C_0(E)..C_n(E)
  std::vector<long> janet;    // F_0..F_n, the columnwise differences
  long spencer_euler = 0;     // C_0 - C_1 + ...
  long hybrid_euler = 0;      // -dim E + C_0(E) - C_1(E) + ...
  long janet_euler = 0;       // -dim E + F_0 - F_1 + ...
  bool dots_checked = false;  // Janet row reproduced from tabular dot counts
};

// The three rows of the first-sequences diagram for an involutive system.
// Column differences must be nonnegative and, when the coordinates are
// generic, must agree with the tabular dot counts; disagreement throws.
DiagramReport fundamental_diagram(const LinearJetSystem& s, const RankPolicy& policy = {});

struct HybridSlotReport {
  long jet_dim = 0;        // dim J_{q+1}(E)
  long outer_dim = 0;      // dim J_1(J_q(E))
  long embedding_rank = 0; // rank of the canonical map between them
  long c1_dim = 0;         // outer_dim - embedding_rank
};

// Rank of J_{q+1}(E) -> J_1(J_q(E)); the cokernel dimension must match the
// boundary-route value of the first hybrid bundle.
HybridSlotReport hybrid_first_slot(int n, int m, int q, const RankPolicy& policy = {});

struct ExactnessReport {
  std::vector<int> levels;   // jet order over each bundle, source first
  std::vector<long> dims;    // leading kernel dim, then the jet dims
  std::vector<long> defects; // homology dims at interior slots + final cokernel
  long alternating_sum = 0;  // kernel - J(E) + J(F_0) - ...
  bool exact = false;        // every defect vanishes
};

// Evaluates the finite-dimensional slice of the sequence
//   0 -> ker -> J(E) -> J(F_0) -> ... -> J(F_k) -> 0
// at tail order r, with jet orders accumulating operator orders from the
// right. Verifies consecutive operators compose to zero (throws otherwise).
ExactnessReport check_jet_exactness(const std::vector<OperatorHandle>& chain,
                                    int tail_order, const RankPolicy& policy = {});

// Same slice for the top-degree blocks.
ExactnessReport check_symbol_exactness(const std::vector<OperatorHandle>& chain,
                                       int tail_order, const RankPolicy& policy = {});

}  // namespace jetseq
