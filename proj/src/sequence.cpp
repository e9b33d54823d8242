#include "jetseq/sequence.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace jetseq {

namespace {

RationalMatrix from_row_list(std::vector<std::vector<Rational>>&& rows, int cols) {
  RationalMatrix out(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < cols; ++j) out.at(i, j) = std::move(rows[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  return out;
}

// Rows of m with the pivot columns of `base` (an rref) eliminated; zero
// remainders dropped. The result spans a complement of the base row space
// inside span(base) + span(m).
RationalMatrix reduce_by(const RationalMatrix& m, const RrefResult& base) {
  std::vector<std::vector<Rational>> kept;
  for (int i = 0; i < m.rows(); ++i) {
    std::vector<Rational> row(static_cast<size_t>(m.cols()));
    for (int j = 0; j < m.cols(); ++j) row[static_cast<size_t>(j)] = m.at(i, j);
    for (int b = 0; b < base.mat.rows(); ++b) {
      Rational c = row[static_cast<size_t>(base.pivot_cols[static_cast<size_t>(b)])];
      if (c == 0) continue;
      for (int j = 0; j < m.cols(); ++j) {
        const Rational& bv = base.mat.at(b, j);
        if (bv != 0) row[static_cast<size_t>(j)] -= c * bv;
      }
    }
    bool nonzero = false;
    for (const auto& v : row)
      if (v != 0) {
        nonzero = true;
        break;
      }
    if (nonzero) kept.push_back(std::move(row));
  }
  return from_row_list(std::move(kept), m.cols());
}

// a * b == 0 over Z/p for the default prime; cheap complex-property check.
bool product_zero_mod_p(const RationalMatrix& a, const RationalMatrix& b) {
  const uint64_t p = kDefaultModularPrime;
  auto to_mod = [&](const Rational& q) -> uint64_t {
    BigInt num = q.get_num() % BigInt(static_cast<unsigned long>(p));
    BigInt den = q.get_den() % BigInt(static_cast<unsigned long>(p));
    if (den == 0) throw std::logic_error("denominator divisible by the modulus");
    uint64_t nu = mpz_class(num < 0 ? num + BigInt(static_cast<unsigned long>(p)) : num).get_ui();
    uint64_t de = mpz_class(den).get_ui();
    // de^(p-2) mod p
    uint64_t inv = 1, base = de, e = p - 2;
    auto mulmod = [&](uint64_t x, uint64_t y) {
      return static_cast<uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
    };
    while (e) {
      if (e & 1) inv = mulmod(inv, base);
      base = mulmod(base, base);
      e >>= 1;
    }
    return static_cast<uint64_t>((static_cast<unsigned __int128>(nu) * inv) % p);
  };
  std::vector<uint64_t> am(static_cast<size_t>(a.rows()) * static_cast<size_t>(a.cols()));
  std::vector<uint64_t> bm(static_cast<size_t>(b.rows()) * static_cast<size_t>(b.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) am[static_cast<size_t>(i) * a.cols() + j] = to_mod(a.at(i, j));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) bm[static_cast<size_t>(i) * b.cols() + j] = to_mod(b.at(i, j));
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      unsigned __int128 acc = 0;
      for (int t = 0; t < a.cols(); ++t) {
        acc += static_cast<unsigned __int128>(am[static_cast<size_t>(i) * a.cols() + t]) *
               bm[static_cast<size_t>(t) * b.cols() + j];
        if ((t & 15) == 15) acc %= p;
      }
      if (acc % p != 0) return false;
    }
  }
  return true;
}

}  // namespace

OperatorHandle OperatorHandle::from_rows(const JetFrame& source, const RationalMatrix& rows) {
  if (rows.cols() != source.size())
    throw std::invalid_argument("operator rows do not match the source frame width");
  return OperatorHandle(source, rows);
}

OperatorHandle OperatorHandle::from_system(const LinearJetSystem& s) {
  return OperatorHandle(s.frame(), s.equations());
}

LinearJetSystem OperatorHandle::kernel() const {
  return LinearJetSystem::from_matrix(source_, rows_);
}

RationalMatrix operator_matrix(const OperatorHandle& d, int r) {
  if (r < 0) throw std::invalid_argument("prolongation order must be nonnegative");
  const int n = d.source().base_dim();
  const JetFrame target(n, d.target_dim(), r);
  const JetFrame big(n, d.source().fiber_dim(), d.order() + r);
  RationalMatrix m(target.size(), big.size());
  for (int t = 0; t < target.size(); ++t) {
    const JetCoord& tc = target.coord(t);
    for (int c = 0; c < d.source().size(); ++c) {
      const Rational& a = d.rows().at(tc.unknown, c);
      if (a == 0) continue;
      const JetCoord& sc = d.source().coord(c);
      m.at(t, big.index_of(sc.unknown, sc.mu.plus(tc.mu))) = a;
    }
  }
  return m;
}

RationalMatrix operator_symbol_matrix(const OperatorHandle& d, int r) {
  if (r < 0) throw std::invalid_argument("prolongation order must be nonnegative");
  const int n = d.source().base_dim();
  const int q = d.order();
  const SymbolFrame target(n, d.target_dim(), r);
  const SymbolFrame big(n, d.source().fiber_dim(), q + r);
  RationalMatrix m(target.size(), big.size());
  for (int t = 0; t < target.size(); ++t) {
    const JetCoord& tc = target.coord(t);
    for (int c = 0; c < d.source().size(); ++c) {
      const Rational& a = d.rows().at(tc.unknown, c);
      if (a == 0) continue;
      const JetCoord& sc = d.source().coord(c);
      if (sc.mu.degree() != q) continue;
      m.at(t, big.index_of(sc.unknown, sc.mu.plus(tc.mu))) = a;
    }
  }
  return m;
}

RationalMatrix prolonged_rows(const OperatorHandle& d, int r) {
  if (r < d.order()) throw std::invalid_argument("cannot prolong an operator downward");
  const int n = d.source().base_dim();
  const JetFrame dst(n, d.source().fiber_dim(), r);
  std::vector<std::vector<Rational>> rows;
  for (int s = 0; s <= r - d.order(); ++s) {
    for (const MultiIndex& nu : indices_of_degree(n, s)) {
      for (int i = 0; i < d.rows().rows(); ++i) {
        std::vector<Rational> row(static_cast<size_t>(dst.size()), rat(0));
        for (int c = 0; c < d.source().size(); ++c) {
          const Rational& a = d.rows().at(i, c);
          if (a == 0) continue;
          const JetCoord& sc = d.source().coord(c);
          row[static_cast<size_t>(dst.index_of(sc.unknown, sc.mu.plus(nu)))] = a;
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return from_row_list(std::move(rows), dst.size());
}

RationalMatrix embedded_rows(const OperatorHandle& d, int r) {
  if (r < d.order()) throw std::invalid_argument("cannot embed into a smaller frame");
  const JetFrame dst(d.source().base_dim(), d.source().fiber_dim(), r);
  RationalMatrix out(d.rows().rows(), dst.size());
  for (int i = 0; i < d.rows().rows(); ++i) {
    for (int c = 0; c < d.source().size(); ++c) {
      const Rational& a = d.rows().at(i, c);
      if (a == 0) continue;
      const JetCoord& sc = d.source().coord(c);
      out.at(i, dst.index_of(sc.unknown, sc.mu)) = a;
    }
  }
  return out;
}

CCReport cc_at_order(const OperatorHandle& d, int r, const std::vector<OperatorHandle>& known,
                     const RankPolicy& policy) {
  const int n = d.source().base_dim();
  const JetFrame cc_frame(n, d.target_dim(), r);
  RationalMatrix m = operator_matrix(d, r);

  CCReport rep;
  rep.order = r;
  rep.total_dim = m.rows() - rank_of(m, policy);

  RationalMatrix inherited(0, cc_frame.size());
  for (const auto& g : known) {
    if (g.source().base_dim() != n || g.source().fiber_dim() != d.target_dim())
      throw std::invalid_argument("known condition lives over the wrong bundle");
    if (g.order() > r) continue;
    inherited = inherited.stacked_on(prolonged_rows(g, r));
  }
  if (inherited.rows() > 0 && !product_zero_mod_p(inherited, m))
    throw std::logic_error("inherited rows are not compatibility conditions");
  rep.inherited_dim = inherited.rows() == 0 ? 0 : rank_of(inherited, policy);
  rep.new_dim = rep.total_dim - rep.inherited_dim;
  if (rep.new_dim < 0) throw std::logic_error("inherited conditions exceed the condition space");

  if (rep.new_dim == 0) {
    rep.generators = RationalMatrix(0, cc_frame.size());
    return rep;
  }
  RationalMatrix lk = left_kernel_basis(m);
  if (inherited.rows() == 0) {
    rep.generators = rref(lk).mat;
  } else {
    rep.generators = rref(reduce_by(lk, rref(inherited))).mat;
  }
  if (rep.generators.rows() != rep.new_dim)
    throw std::logic_error("condition bookkeeping mismatch between ranks and bases");
  return rep;
}

CCOrderBound cc_order_bound(const LinearJetSystem& s, int max_prolongations, int bound,
                            const RankPolicy& policy) {
  auto fi = is_formally_integrable(s, bound, policy);
  if (!fi.formally_integrable)
    throw std::invalid_argument("order bound is only defined for formally integrable systems");
  for (int sp = 0; sp <= max_prolongations; ++sp) {
    const LinearJetSystem cur = sp == 0 ? s : prolong(s, sp);
    auto acy = is_s_acyclic(cur, 2, bound, policy);
    if (acy.acyclic) return CCOrderBound{sp + 1, sp, acy.certified};
  }
  throw std::runtime_error("no 2-acyclic prolongation found within the scan bound");
}

SequenceReport resolution(const LinearJetSystem& s, int budget, int window,
                          const RankPolicy& policy) {
  if (budget < 1) throw std::invalid_argument("budget must be positive");
  if (window < 1) throw std::invalid_argument("window must be positive");
  const int n = s.frame().base_dim();

  SequenceReport rep;
  rep.certified = true;
  OperatorHandle cur = OperatorHandle::from_system(s);
  rep.operators.push_back(cur);
  rep.bundles = {static_cast<long>(s.frame().fiber_dim()), static_cast<long>(cur.target_dim())};
  rep.orders = {cur.order()};
  std::ostringstream notes;

  for (int step = 0; step < budget; ++step) {
    if (cur.target_dim() == 0) {
      rep.complete = true;
      break;
    }
    // Try to certify a generator-order bound for this step. The attempt costs
    // a formal-integrability window plus acyclicity scans on the kernel of the
    // current operator, so it is skipped when the prolonged frames involved
    // would be large; the scan below then falls back to the empty-order
    // window, which the step report states.
    std::optional<CCOrderBound> stop_bound;
    const LinearJetSystem kern = cur.kernel();
    constexpr int kBoundScanDepth = 2;
    if (dim_jet(n, kern.frame().fiber_dim(), kern.order() + kBoundScanDepth + 1) <= 1200) {
      try {
        stop_bound = cc_order_bound(kern, 3, kBoundScanDepth, policy);
      } catch (const std::exception&) {
        stop_bound.reset();
      }
    }

    // The next operator collects the full condition space at a single order.
    std::optional<OperatorHandle> next;
    std::string stop_reason = "budget";
    bool step_certified = false;
    if (stop_bound) {
      // Every condition is generated at or below the bound order, so the full
      // space at that order presents them all.
      auto cc = cc_at_order(cur, stop_bound->order, {}, policy);
      stop_reason = "order-bound";
      step_certified = stop_bound->certified;
      if (cc.total_dim > 0)
        next = OperatorHandle::from_rows(JetFrame(n, cur.target_dim(), stop_bound->order),
                                         cc.generators);
    } else {
      // No affordable bound: keep the full space at the last order that
      // contributed new conditions, confirmed by `window` empty orders.
      std::vector<OperatorHandle> known;
      int last_new = 0;
      for (int r = 1; r <= budget; ++r) {
        auto cc = cc_at_order(cur, r, known, policy);
        if (cc.new_dim > 0) {
          // Re-collect the whole space at this order, not just the complement
          // of the inherited part.
          auto full = known.empty() ? std::move(cc) : cc_at_order(cur, r, {}, policy);
          next = OperatorHandle::from_rows(JetFrame(n, cur.target_dim(), r), full.generators);
          known.assign(1, *next);
          last_new = r;
        }
        if (r - last_new >= window) {
          stop_reason = "window";
          break;
        }
      }
    }
    if (!step_certified) rep.certified = false;

    if (!next) {
      rep.complete = stop_reason != "budget";
      rep.steps.push_back({0, 0, step_certified, stop_reason});
      if (rep.complete)
        notes << "chain ends: no conditions through the scanned orders (" << stop_reason << "). ";
      else
        notes << "step " << step << " ran out of budget before finding conditions. ";
      break;
    }

    cur = *next;
    rep.operators.push_back(cur);
    rep.bundles.push_back(cur.target_dim());
    rep.orders.push_back(cur.order());
    rep.steps.push_back({cur.order(), cur.target_dim(), step_certified, stop_reason});
    if (stop_reason == "budget") {
      notes << "step " << step << " hit the order budget while scanning. ";
      break;
    }
  }
  if (!rep.complete && rep.steps.size() == static_cast<size_t>(budget))
    notes << "step budget exhausted before the chain terminated. ";

  long ep = 0;
  int sign = -1;
  for (long b : rep.bundles) {
    ep += sign * b;
    sign = -sign;
  }
  rep.euler_characteristic = ep;
  rep.notes = notes.str();
  return rep;
}

JanetTabular janet_tabular(const LinearJetSystem& s, const RankPolicy& policy) {
  auto cartan = cartan_test(s, 0, 0, policy);
  if (!cartan.passed)
    throw std::invalid_argument(
        "tabular requires an involutive symbol in the given coordinates "
        "(character test failed; try a coordinate change)");
  const long projected = project(prolong(s, 1), s.order()).solution_dim();
  if (projected != s.solution_dim())
    throw std::invalid_argument("tabular requires a formally integrable (projection-stable) system");

  const int n = s.frame().base_dim();
  const int q = s.order();
  std::map<std::pair<int, int>, int> census;  // (order, class) -> count
  for (int col : s.pivot_columns()) {
    const JetCoord& c = s.frame().coord(col);
    const int deg = c.mu.degree();
    const int cls = deg == q ? c.mu.cls() : 0;
    census[{deg, cls}] += 1;
  }
  JanetTabular tab;
  tab.n = n;
  for (auto it = census.rbegin(); it != census.rend(); ++it) {
    const auto [deg, cls] = it->first;
    const int dots = deg == q ? n - cls : n;
    tab.rows.push_back(TabularRow{deg, cls, it->second, dots});
  }
  return tab;
}

std::vector<long> janet_bundles_by_dots(const JanetTabular& t) {
  std::vector<long> f(static_cast<size_t>(t.n), 0);
  for (const auto& row : t.rows)
    for (int k = 1; k <= t.n; ++k) f[static_cast<size_t>(k - 1)] += row.count * binomial(row.dots, k);
  return f;
}

namespace {

std::vector<long> bundle_row(int n, long base_dim, const SymbolSpace& g_above,
                             const RankPolicy& policy) {
  std::vector<long> out;
  out.push_back(base_dim);
  for (int r = 1; r <= n; ++r) {
    const RationalMatrix d = delta_matrix(g_above, r - 1);
    out.push_back(binomial(n, r) * base_dim - rank_of(d, policy));
  }
  return out;
}

}  // namespace

std::vector<long> spencer_bundles(const LinearJetSystem& s, const RankPolicy& policy) {
  const int n = s.frame().base_dim();
  const int q = s.order();
  auto row = bundle_row(n, s.solution_dim(), symbol_at(s, q + 1), policy);
  if (symbol_at(s, q).dim() == 0) {
    // Zero top symbol: the row must collapse to plain binomial multiples.
    for (int r = 0; r <= n; ++r)
      if (row[static_cast<size_t>(r)] != binomial(n, r) * s.solution_dim())
        throw std::logic_error("bundle row disagrees with the zero-symbol form");
  }
  return row;
}

std::vector<long> hybrid_bundles(const LinearJetSystem& s, const RankPolicy& policy) {
  const int n = s.frame().base_dim();
  const int m = s.frame().fiber_dim();
  const int q = s.order();
  return bundle_row(n, dim_jet(n, m, q), ambient_symbol(n, m, q + 1), policy);
}

DiagramReport fundamental_diagram(const LinearJetSystem& s, const RankPolicy& policy) {
  auto inv = is_involutive(s, 6, 0, policy);
  if (!inv.involutive)
    throw std::invalid_argument("the diagram is only defined for involutive systems");

  DiagramReport rep;
  const int n = s.frame().base_dim();
  rep.dim_e = s.frame().fiber_dim();
  rep.spencer = spencer_bundles(s, policy);
  rep.hybrid = hybrid_bundles(s, policy);
  rep.janet.resize(static_cast<size_t>(n) + 1);
  for (int r = 0; r <= n; ++r) {
    rep.janet[static_cast<size_t>(r)] =
        rep.hybrid[static_cast<size_t>(r)] - rep.spencer[static_cast<size_t>(r)];
    if (rep.janet[static_cast<size_t>(r)] < 0)
      throw std::logic_error("negative bundle dimension in the quotient row");
  }

  try {
    auto dots = janet_bundles_by_dots(janet_tabular(s, policy));
    for (int k = 1; k <= n; ++k)
      if (dots[static_cast<size_t>(k - 1)] != rep.janet[static_cast<size_t>(k)])
        throw std::logic_error("dot census disagrees with the bundle differences");
    rep.dots_checked = true;
  } catch (const std::invalid_argument&) {
    rep.dots_checked = false;  // coordinates not generic; cross-check unavailable
  }

  int sign = 1;
  for (long c : rep.spencer) {
    rep.spencer_euler += sign * c;
    sign = -sign;
  }
  rep.hybrid_euler = -rep.dim_e;
  sign = 1;
  for (long c : rep.hybrid) {
    rep.hybrid_euler += sign * c;
    sign = -sign;
  }
  rep.janet_euler = -rep.dim_e;
  sign = 1;
  for (long c : rep.janet) {
    rep.janet_euler += sign * c;
    sign = -sign;
  }
  return rep;
}

HybridSlotReport hybrid_first_slot(int n, int m, int q, const RankPolicy& policy) {
  const JetFrame inner(n, m, q);
  const JetFrame outer(n, inner.size(), 1);
  const JetFrame big(n, m, q + 1);
  RationalMatrix map(outer.size(), big.size());
  for (int t = 0; t < outer.size(); ++t) {
    const JetCoord& oc = outer.coord(t);  // (inner coordinate index, nu)
    const JetCoord& ic = inner.coord(oc.unknown);
    map.at(t, big.index_of(ic.unknown, ic.mu.plus(oc.mu))) = rat(1);
  }
  HybridSlotReport rep;
  rep.jet_dim = big.size();
  rep.outer_dim = outer.size();
  rep.embedding_rank = rank_of(map, policy);
  rep.c1_dim = rep.outer_dim - rep.embedding_rank;
  return rep;
}

namespace {

ExactnessReport exactness_impl(const std::vector<OperatorHandle>& chain, int tail_order,
                               bool symbol_level, const RankPolicy& policy) {
  if (chain.empty()) throw std::invalid_argument("exactness check needs at least one operator");
  const int k = static_cast<int>(chain.size());
  const int n = chain[0].source().base_dim();
  for (int i = 0; i + 1 < k; ++i) {
    if (chain[static_cast<size_t>(i) + 1].source().base_dim() != n ||
        chain[static_cast<size_t>(i) + 1].source().fiber_dim() != chain[static_cast<size_t>(i)].target_dim())
      throw std::invalid_argument("chain bundles do not line up");
  }

  ExactnessReport rep;
  rep.levels.resize(static_cast<size_t>(k) + 1);
  rep.levels[static_cast<size_t>(k)] = tail_order;
  for (int i = k - 1; i >= 0; --i)
    rep.levels[static_cast<size_t>(i)] =
        rep.levels[static_cast<size_t>(i) + 1] + chain[static_cast<size_t>(i)].order();

  std::vector<RationalMatrix> mats;
  std::vector<long> ranks;
  for (int i = 0; i < k; ++i) {
    const int r = rep.levels[static_cast<size_t>(i) + 1];
    mats.push_back(symbol_level ? operator_symbol_matrix(chain[static_cast<size_t>(i)], r)
                                : operator_matrix(chain[static_cast<size_t>(i)], r));
    ranks.push_back(rank_of(mats.back(), policy));
  }
  for (int i = 0; i + 1 < k; ++i)
    if (!product_zero_mod_p(mats[static_cast<size_t>(i) + 1], mats[static_cast<size_t>(i)]))
      throw std::invalid_argument("consecutive operators do not compose to zero");

  rep.dims.push_back(mats[0].cols() - ranks[0]);  // leading kernel
  rep.dims.push_back(mats[0].cols());
  for (int i = 0; i < k; ++i) rep.dims.push_back(mats[static_cast<size_t>(i)].rows());

  for (int i = 0; i + 1 < k; ++i) {
    const long ker = mats[static_cast<size_t>(i) + 1].cols() - ranks[static_cast<size_t>(i) + 1];
    const long defect = ker - ranks[static_cast<size_t>(i)];
    if (defect < 0) throw std::logic_error("negative homology defect");
    rep.defects.push_back(defect);
  }
  rep.defects.push_back(mats[static_cast<size_t>(k) - 1].rows() - ranks[static_cast<size_t>(k) - 1]);

  long sum = 0;
  int sign = 1;
  for (long d : rep.dims) {
    sum += sign * d;
    sign = -sign;
  }
  rep.alternating_sum = sum;
  rep.exact = std::all_of(rep.defects.begin(), rep.defects.end(), [](long d) { return d == 0; });
  return rep;
}

}  // namespace

ExactnessReport check_jet_exactness(const std::vector<OperatorHandle>& chain, int tail_order,
                                    const RankPolicy& policy) {
  return exactness_impl(chain, tail_order, false, policy);
}

ExactnessReport check_symbol_exactness(const std::vector<OperatorHandle>& chain, int tail_order,
                                       const RankPolicy& policy) {
  return exactness_impl(chain, tail_order, true, policy);
}

}  // namespace jetseq
