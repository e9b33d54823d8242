#pragma once
// Jet coordinates and frames.
//
// A multi-index mu = (mu_1..mu_n) records derivative multiplicities for n
// base variables. Its class is the smallest i (1-based) with mu_i != 0; the
// zero index has no class and reports 0.
//
// Frame order (fixed; every matrix in the engine is written against it):
//   degree |mu| descending,
//   then mu ascending lexicographically,
//   then unknown index ascending.
// Within a fixed degree, lex-ascending runs through classes in descending
// order (all mu_1 = 0, mu_2 = 0, ... come first), and it is stable under
// shifts: mu < nu implies mu + 1_i < nu + 1_i. That shift-stability is what
// lets leading terms of prolonged equations be read off from leading terms
// of the originals, which the Cartan/Janet machinery depends on.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace jetseq {

struct MultiIndex {
  std::vector<int> exp;  // exp[i] >= 0, size n

  explicit MultiIndex(int n = 0) : exp(n, 0) {}
  explicit MultiIndex(std::vector<int> e) : exp(std::move(e)) {}

  int size() const { return static_cast<int>(exp.size()); }
  int degree() const;
  // 1-based position of the first nonzero entry; 0 for the zero index.
  int cls() const;
  MultiIndex shifted(int i) const;  // +1 in slot i (0-based)
  // Subtract 1 in slot i; returns nothing when exp[i] == 0.
  std::optional<MultiIndex> unshifted(int i) const;
  MultiIndex plus(const MultiIndex& other) const;

  bool operator==(const MultiIndex&) const = default;
  auto operator<=>(const MultiIndex& rhs) const {
    return exp <=> rhs.exp;  // plain lexicographic
  }

  std::string to_string() const;  // "(1,0,2)"
};

// Frame ordering on (unknown, mu) pairs, as described above.
bool frame_less(const MultiIndex& a, int unknown_a, const MultiIndex& b, int unknown_b);

struct JetCoord {
  int unknown;  // 0-based
  MultiIndex mu;
  bool operator==(const JetCoord&) const = default;
};

long binomial(long n, long k);  // checked against int64 overflow

long dim_jet(int n, int m, int q);     // m * C(n+q, n)
long dim_symbol(int n, int m, int q);  // m * C(n+q-1, n-1)
// Number of degree-q multi-indices of class cls: C(n-cls+q-1, q-1).
long class_count(int n, int q, int cls);

// Degree-d multi-indices in frame order (lex ascending).
std::vector<MultiIndex> indices_of_degree(int n, int d);

class JetFrame {
 public:
  JetFrame(int n, int m, int q);

  int base_dim() const { return n_; }
  int fiber_dim() const { return m_; }
  int order() const { return q_; }
  int size() const { return static_cast<int>(coords_.size()); }

  const JetCoord& coord(int idx) const { return coords_[idx]; }
  int index_of(int unknown, const MultiIndex& mu) const;  // throws if absent
  std::optional<int> find(int unknown, const MultiIndex& mu) const;

  // First frame position whose degree is <= d (frame is degree-descending).
  int first_index_of_degree_at_most(int d) const;

  bool operator==(const JetFrame& rhs) const {
    return n_ == rhs.n_ && m_ == rhs.m_ && q_ == rhs.q_;
  }

 private:
  int n_, m_, q_;
  std::vector<JetCoord> coords_;
  std::map<std::pair<int, std::vector<int>>, int> lookup_;
};

// Coordinates of degree exactly `degree`, same ordering rules.
class SymbolFrame {
 public:
  SymbolFrame(int n, int m, int degree);

  int base_dim() const { return n_; }
  int fiber_dim() const { return m_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(coords_.size()); }

  const JetCoord& coord(int idx) const { return coords_[idx]; }
  int index_of(int unknown, const MultiIndex& mu) const;

 private:
  int n_, m_, degree_;
  std::vector<JetCoord> coords_;
  std::map<std::pair<int, std::vector<int>>, int> lookup_;
};

}  // namespace jetseq
