#pragma once
// Koszul-style boundary on wedge-tensor-symbol spaces and everything built
// on it: cohomology dimensions, acyclicity verdicts, the Cartan character
// test, and involutive completion.
//
// Degree bookkeeping: g_t means the degree-t piece of the solution space.
// For t >= the system order it is symbol_at(s, t); below the system order
// the convention is the full ambient piece (no equations live down there
// from the symbol's point of view). H(s, t) denotes the cohomology at the
// wedge-degree-s, symbol-degree-t spot:
//
//   wedge^{s-1} (x) g_{t+1}  ->  wedge^s (x) g_t  ->  wedge^{s+1} (x) g_{t-1}
//
// Ranks of the outgoing map can be measured against the full ambient
// codomain since enlarging the codomain never changes a rank.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "jetseq/exactalg.hpp"
#include "jetseq/system.hpp"

namespace jetseq {

// Basis of wedge^s(R^n): sorted 0-based index subsets, lexicographic order.
class WedgeFrame {
 public:
  WedgeFrame(int n, int s);

  int base_dim() const { return n_; }
  int wedge_degree() const { return s_; }
  int size() const { return static_cast<int>(subsets_.size()); }
  const std::vector<int>& subset(int idx) const { return subsets_[idx]; }
  int index_of(const std::vector<int>& sorted_subset) const;

 private:
  int n_, s_;
  std::vector<std::vector<int>> subsets_;
};

// Matrix of the boundary wedge^s (x) g -> wedge^{s+1} (x) (ambient degree-1-lower),
// columns indexed by (wedge subset, kernel basis vector of g), rows by
// (wedge subset, symbol coordinate). Satisfies boundary-of-boundary = 0.
RationalMatrix delta_matrix(const SymbolSpace& g, int s);

// dim H(s, t) for the system's symbol tower.
long cohomology_dim(const LinearJetSystem& sys, int s, int t, const RankPolicy& = {});

struct AcyclicityReport {
  bool acyclic = false;   // all requested groups vanished in the range checked
  bool certified = false; // verdict is definitive: either a zero symbol degree
                          // was reached (so it extends to every degree) or an
                          // explicit nonzero group was found
  int checked_up_to = 0;  // highest symbol degree examined
  std::optional<int> zero_symbol_degree;          // first t with dim g_t = 0
  std::optional<std::pair<int, int>> failure;     // (s, t) of first nonzero group
};

// Checks H(j, t) = 0 for 1 <= j <= s and order <= t <= order + bound,
// stopping early (and certifying) once some g_t vanishes.
AcyclicityReport is_s_acyclic(const LinearJetSystem& sys, int s, int bound,
                              const RankPolicy& = {});

struct CartanTestReport {
  std::vector<long> characters;   // per class 1..n, in the coordinates used
  long expected_prolonged_dim = 0;  // sum over classes of class * character
  long prolonged_dim = 0;           // actual dim g_{q+1}
  bool passed = false;              // equality reached
  int coordinate_changes_used = 0;  // 0 = original coordinates already worked
};

// Character count from the pivot structure of the top-degree symbol block.
// The inequality dim g_{q+1} <= sum i*alpha_i holds in every coordinate
// system; equality certifies involutivity. On strict inequality the test is
// retried under random unimodular coordinate changes, since the equality is
// only guaranteed to be attainable in generic position.
CartanTestReport cartan_test(const LinearJetSystem& sys, std::uint64_t seed = 0,
                             int retries = 8, const RankPolicy& = {});

struct InvolutivityReport {
  bool involutive = false;  // verdict for the system (stable projection +
                            // involutive symbol)
  bool certified = false;   // finite type reached or the character test passed
  bool projection_stable = false;  // dim of the one-step projection unchanged
  AcyclicityReport acyclicity;     // boundary-route check of the symbol
  CartanTestReport cartan;         // character-route cross-check
};

// Primary verdict comes from the cohomology route; the character test is run
// as a cross-check and as the certificate for infinite-type symbols. A hard
// contradiction between the two routes throws.
InvolutivityReport is_involutive(const LinearJetSystem& sys, int bound = 6,
                                 std::uint64_t seed = 0, const RankPolicy& = {});

struct CompletionStep {
  enum class Kind { Prolong, Project };
  Kind kind;
  int order_after = 0;
  long dim_after = 0;  // solution dim of the system after the step
};

struct CompletionResult {
  LinearJetSystem system;
  std::vector<CompletionStep> trace;
  bool completed = false;  // reached an involutive system within max_steps
  InvolutivityReport verdict;
};

// Prolongation-projection loop: take integrability conditions whenever the
// one-step projection cuts the system, otherwise prolong until the symbol
// is involutive.
CompletionResult involutive_completion(const LinearJetSystem& sys, int max_steps = 32,
                                       std::uint64_t seed = 0, const RankPolicy& = {});

// Random integer matrix with entries in [-3, 3] and determinant +-1,
// found by rejection sampling.
RationalMatrix random_unimodular(int n, std::mt19937_64& rng);

}  // namespace jetseq
