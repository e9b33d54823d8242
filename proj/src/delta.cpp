#include "jetseq/delta.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace jetseq {

namespace {

void enumerate_subsets(int n, int s, int start, std::vector<int>& cur,
                       std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == s) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    enumerate_subsets(n, s, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

WedgeFrame::WedgeFrame(int n, int s) : n_(n), s_(s) {
  if (n < 0 || s < 0) throw std::invalid_argument("WedgeFrame: negative parameter");
  if (s <= n) {
    std::vector<int> cur;
    enumerate_subsets(n, s, 0, cur, subsets_);
  }
}

int WedgeFrame::index_of(const std::vector<int>& sorted_subset) const {
  auto it = std::lower_bound(subsets_.begin(), subsets_.end(), sorted_subset);
  if (it == subsets_.end() || *it != sorted_subset) {
    throw std::out_of_range("WedgeFrame: subset not in frame");
  }
  return static_cast<int>(it - subsets_.begin());
}

RationalMatrix delta_matrix(const SymbolSpace& g, int s) {
  if (s < 0) throw std::invalid_argument("delta_matrix: negative wedge degree");
  const SymbolFrame& f = g.frame();
  int n = f.base_dim();
  int m = f.fiber_dim();
  int t = f.degree();
  WedgeFrame domain(n, s), codomain(n, s + 1);
  RationalMatrix basis = g.basis();
  int dim = basis.cols();
  int cols = domain.size() * dim;
  if (t == 0 || codomain.size() == 0 || cols == 0) {
    return RationalMatrix(0, cols);
  }

  SymbolFrame lower(n, m, t - 1);
  RationalMatrix out(codomain.size() * lower.size(), cols);
  for (int w = 0; w < domain.size(); ++w) {
    const std::vector<int>& sub = domain.subset(w);
    for (int b = 0; b < dim; ++b) {
      int col = w * dim + b;
      for (int c = 0; c < f.size(); ++c) {
        const Rational& v = basis.at(c, b);
        if (v == 0) continue;
        const JetCoord& jc = f.coord(c);
        for (int i = 0; i < n; ++i) {
          if (jc.mu.exp[i] == 0) continue;
          auto pos_it = std::lower_bound(sub.begin(), sub.end(), i);
          if (pos_it != sub.end() && *pos_it == i) continue;  // dx_i ^ dx_i = 0
          int pos = static_cast<int>(pos_it - sub.begin());
          std::vector<int> bigger = sub;
          bigger.insert(bigger.begin() + pos, i);
          int row = codomain.index_of(bigger) * lower.size() +
                    lower.index_of(jc.unknown, *jc.mu.unshifted(i));
          if (pos % 2 == 0) {
            out.at(row, col) += v;
          } else {
            out.at(row, col) -= v;
          }
        }
      }
    }
  }
  return out;
}

namespace {

SymbolSpace piece_at(const LinearJetSystem& sys, int t) {
  const JetFrame& f = sys.frame();
  if (t < 0) throw std::invalid_argument("symbol degree must be >= 0");
  if (t >= f.order()) return symbol_at(sys, t);
  return ambient_symbol(f.base_dim(), f.fiber_dim(), t);
}

// Shared worker so acyclicity scans can reuse symbol spaces and ranks.
struct CohomologyScanner {
  const LinearJetSystem& sys;
  RankPolicy policy;
  std::map<int, SymbolSpace> pieces;
  std::map<std::pair<int, int>, int> delta_ranks;  // (t, s) -> rank

  const SymbolSpace& piece(int t) {
    auto it = pieces.find(t);
    if (it == pieces.end()) it = pieces.emplace(t, piece_at(sys, t)).first;
    return it->second;
  }

  int delta_rank(int t, int s) {
    auto key = std::make_pair(t, s);
    auto it = delta_ranks.find(key);
    if (it == delta_ranks.end()) {
      it = delta_ranks.emplace(key, rank_of(delta_matrix(piece(t), s), policy)).first;
    }
    return it->second;
  }

  long group_dim(int s, int t) {
    long cycles = binomial(sys.frame().base_dim(), s) * piece(t).dim() - delta_rank(t, s);
    long boundaries = s == 0 ? 0 : delta_rank(t + 1, s - 1);
    long h = cycles - boundaries;
    if (h < 0) throw std::logic_error("cohomology_dim: inconsistent ranks");
    return h;
  }
};

}  // namespace

long cohomology_dim(const LinearJetSystem& sys, int s, int t, const RankPolicy& policy) {
  CohomologyScanner scan{sys, policy, {}, {}};
  return scan.group_dim(s, t);
}

AcyclicityReport is_s_acyclic(const LinearJetSystem& sys, int s, int bound,
                              const RankPolicy& policy) {
  if (s < 0 || bound < 0) throw std::invalid_argument("is_s_acyclic: negative argument");
  CohomologyScanner scan{sys, policy, {}, {}};
  AcyclicityReport report;
  int q = sys.order();
  for (int t = q; t <= q + bound; ++t) {
    report.checked_up_to = t;
    if (scan.piece(t).dim() == 0) {
      report.zero_symbol_degree = t;
      report.acyclic = true;
      report.certified = true;
      return report;
    }
    for (int j = 1; j <= s; ++j) {
      if (scan.group_dim(j, t) != 0) {
        report.failure = std::make_pair(j, t);
        report.acyclic = false;
        report.certified = true;
        return report;
      }
    }
  }
  report.acyclic = true;
  report.certified = false;
  return report;
}

namespace {

std::vector<long> cartan_characters(const LinearJetSystem& sys) {
  const JetFrame& f = sys.frame();
  int n = f.base_dim();
  SymbolSpace g = symbol_at(sys, sys.order());
  const RationalMatrix& eqs = g.equations();
  std::vector<bool> is_pivot(g.frame().size(), false);
  for (int r = 0; r < eqs.rows(); ++r) {
    for (int c = 0; c < eqs.cols(); ++c) {
      if (eqs.at(r, c) != 0) {
        is_pivot[c] = true;
        break;
      }
    }
  }
  std::vector<long> alpha(n + 1, 0);
  for (int c = 0; c < g.frame().size(); ++c) {
    if (is_pivot[c]) continue;
    int cls = g.frame().coord(c).mu.cls();
    // Order-zero coordinates have every variable multiplicative.
    alpha[cls == 0 ? n : cls]++;
  }
  alpha.erase(alpha.begin());  // 1-based classes
  return alpha;
}

long expected_from_characters(const std::vector<long>& alpha) {
  long sum = 0;
  for (int i = 0; i < static_cast<int>(alpha.size()); ++i) sum += (i + 1) * alpha[i];
  return sum;
}

}  // namespace

CartanTestReport cartan_test(const LinearJetSystem& sys, std::uint64_t seed,
                             int retries, const RankPolicy& policy) {
  CartanTestReport report;
  report.prolonged_dim = symbol_at(sys, sys.order()).prolonged_dim(1, policy);
  report.characters = cartan_characters(sys);
  report.expected_prolonged_dim = expected_from_characters(report.characters);
  if (report.prolonged_dim > report.expected_prolonged_dim) {
    throw std::logic_error("cartan_test: prolonged symbol exceeds character bound");
  }
  if (report.prolonged_dim == report.expected_prolonged_dim) {
    report.passed = true;
    return report;
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 1; attempt <= retries; ++attempt) {
    LinearJetSystem moved = change_coordinates(sys, random_unimodular(sys.frame().base_dim(), rng));
    std::vector<long> alpha = cartan_characters(moved);
    long expected = expected_from_characters(alpha);
    if (expected < report.prolonged_dim) {
      throw std::logic_error("cartan_test: prolonged symbol exceeds character bound");
    }
    if (expected < report.expected_prolonged_dim) {
      // Tighter bound; remember the best coordinates seen.
      report.characters = alpha;
      report.expected_prolonged_dim = expected;
    }
    if (expected == report.prolonged_dim) {
      report.characters = alpha;
      report.expected_prolonged_dim = expected;
      report.passed = true;
      report.coordinate_changes_used = attempt;
      return report;
    }
  }
  report.coordinate_changes_used = retries;
  return report;
}

InvolutivityReport is_involutive(const LinearJetSystem& sys, int bound,
                                 std::uint64_t seed, const RankPolicy& policy) {
  InvolutivityReport report;
  int q = sys.order();
  long dim_next = solution_dim_at(sys, q + 1, policy);
  long g_next = symbol_at(sys, q).prolonged_dim(1, policy);
  long projected = dim_next - g_next;
  if (projected > sys.solution_dim()) {
    throw std::logic_error("is_involutive: inconsistent ranks");
  }
  report.projection_stable = projected == sys.solution_dim();

  report.acyclicity = is_s_acyclic(sys, sys.frame().base_dim(), bound, policy);
  report.cartan = cartan_test(sys, seed, 8, policy);
  if (report.cartan.passed && report.acyclicity.failure.has_value()) {
    throw std::logic_error("is_involutive: character test passed but a cohomology group is nonzero");
  }

  bool symbol_involutive;
  if (report.acyclicity.failure.has_value()) {
    symbol_involutive = false;
    report.certified = true;
  } else if (report.acyclicity.certified || report.cartan.passed) {
    symbol_involutive = true;
    report.certified = true;
  } else {
    symbol_involutive = report.acyclicity.acyclic;
    report.certified = false;
  }
  report.involutive = report.projection_stable && symbol_involutive;
  return report;
}

CompletionResult involutive_completion(const LinearJetSystem& sys, int max_steps,
                                       std::uint64_t seed, const RankPolicy& policy) {
  LinearJetSystem cur = sys;
  std::vector<CompletionStep> trace;
  for (int step = 0; step < max_steps; ++step) {
    LinearJetSystem next = prolong(cur, 1);
    LinearJetSystem projected = project(next, cur.order());
    if (projected.solution_dim() < cur.solution_dim()) {
      cur = std::move(projected);
      trace.push_back({CompletionStep::Kind::Project, cur.order(), cur.solution_dim()});
      continue;
    }
    InvolutivityReport verdict = is_involutive(cur, 6, seed, policy);
    if (verdict.involutive) {
      return {std::move(cur), std::move(trace), true, std::move(verdict)};
    }
    cur = std::move(next);
    trace.push_back({CompletionStep::Kind::Prolong, cur.order(), cur.solution_dim()});
  }
  InvolutivityReport verdict = is_involutive(cur, 6, seed, policy);
  bool completed = verdict.involutive;
  return {std::move(cur), std::move(trace), completed, std::move(verdict)};
}

RationalMatrix random_unimodular(int n, std::mt19937_64& rng) {
  if (n <= 0) throw std::invalid_argument("random_unimodular: n must be positive");
  std::uniform_int_distribution<int> entry(-3, 3);
  std::vector<std::vector<long>> a(n, std::vector<long>(n));

  // Recursive integer determinant; entries stay tiny so long arithmetic is safe.
  auto det = [&](auto&& self, std::vector<std::vector<long>>& mat) -> long {
    int k = static_cast<int>(mat.size());
    if (k == 1) return mat[0][0];
    long sum = 0;
    for (int i = 0; i < k; ++i) {
      if (mat[i][0] == 0) continue;
      std::vector<std::vector<long>> minor;
      minor.reserve(k - 1);
      for (int r = 0; r < k; ++r) {
        if (r == i) continue;
        minor.emplace_back(mat[r].begin() + 1, mat[r].end());
      }
      long term = mat[i][0] * self(self, minor);
      sum += (i % 2 == 0) ? term : -term;
    }
    return sum;
  };

  for (int attempt = 0; attempt < 20000; ++attempt) {
    for (auto& row : a) {
      for (long& v : row) v = entry(rng);
    }
    std::vector<std::vector<long>> copy = a;
    long d = det(det, copy);
    if (d == 1 || d == -1) {
      RationalMatrix out(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out.at(i, j) = rat(a[i][j]);
      }
      return out;
    }
  }
  throw std::runtime_error("random_unimodular: no unimodular matrix found");
}

}  // namespace jetseq
