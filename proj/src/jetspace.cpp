#include "jetseq/jetspace.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace jetseq {

int MultiIndex::degree() const { return std::accumulate(exp.begin(), exp.end(), 0); }

int MultiIndex::cls() const {
  for (int i = 0; i < size(); ++i)
    if (exp[i] != 0) return i + 1;
  return 0;
}

MultiIndex MultiIndex::shifted(int i) const {
  MultiIndex out = *this;
  out.exp.at(i) += 1;
  return out;
}

std::optional<MultiIndex> MultiIndex::unshifted(int i) const {
  if (exp.at(i) == 0) return std::nullopt;
  MultiIndex out = *this;
  out.exp[i] -= 1;
  return out;
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
  if (other.size() != size()) throw std::invalid_argument("MultiIndex::plus: size mismatch");
  MultiIndex out = *this;
  for (int i = 0; i < size(); ++i) out.exp[i] += other.exp[i];
  return out;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (int i = 0; i < size(); ++i) {
    if (i) s += ",";
    s += std::to_string(exp[i]);
  }
  return s + ")";
}

bool frame_less(const MultiIndex& a, int unknown_a, const MultiIndex& b, int unknown_b) {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  if (a.exp != b.exp) return a.exp < b.exp;
  return unknown_a < unknown_b;
}

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long r = 1;
  for (long i = 1; i <= k; ++i) {
    if (r > std::numeric_limits<long>::max() / (n - k + i))
      throw std::overflow_error("binomial: count overflow");
    r = r * (n - k + i) / i;
  }
  return r;
}

long dim_jet(int n, int m, int q) { return m * binomial(n + q, n); }

long dim_symbol(int n, int m, int q) { return m * binomial(n + q - 1, n - 1); }

long class_count(int n, int q, int cls) {
  if (cls < 1 || cls > n || q < 1) return 0;
  return binomial(n - cls + q - 1, q - 1);
}

namespace {

void enumerate_degree(int n, int d, int slot, int left, std::vector<int>& cur,
                      std::vector<MultiIndex>& out) {
  if (slot == n - 1) {
    cur[slot] = left;
    out.emplace_back(cur);
    return;
  }
  for (int v = 0; v <= left; ++v) {
    cur[slot] = v;
    enumerate_degree(n, d, slot + 1, left - v, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> indices_of_degree(int n, int d) {
  std::vector<MultiIndex> out;
  if (n == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  std::vector<int> cur(n, 0);
  enumerate_degree(n, d, 0, d, cur, out);
  return out;  // recursion emits tuples in ascending lexicographic order
}

JetFrame::JetFrame(int n, int m, int q) : n_(n), m_(m), q_(q) {
  if (n < 1 || m < 1 || q < 0) throw std::invalid_argument("JetFrame: bad parameters");
  for (int d = q; d >= 0; --d)
    for (const MultiIndex& mu : indices_of_degree(n, d))
      for (int k = 0; k < m; ++k) coords_.push_back({k, mu});
  for (int i = 0; i < size(); ++i)
    lookup_.emplace(std::make_pair(coords_[i].unknown, coords_[i].mu.exp), i);
}

int JetFrame::index_of(int unknown, const MultiIndex& mu) const {
  const auto found = find(unknown, mu);
  if (!found)
    throw std::out_of_range("JetFrame: coordinate not in frame: unknown " +
                            std::to_string(unknown) + " mu " + mu.to_string());
  return *found;
}

std::optional<int> JetFrame::find(int unknown, const MultiIndex& mu) const {
  const auto it = lookup_.find(std::make_pair(unknown, mu.exp));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

int JetFrame::first_index_of_degree_at_most(int d) const {
  int lo = 0, hi = size();
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (coords_[mid].mu.degree() <= d)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

SymbolFrame::SymbolFrame(int n, int m, int degree) : n_(n), m_(m), degree_(degree) {
  if (n < 1 || m < 1 || degree < 0) throw std::invalid_argument("SymbolFrame: bad parameters");
  for (const MultiIndex& mu : indices_of_degree(n, degree))
    for (int k = 0; k < m; ++k) coords_.push_back({k, mu});
  for (int i = 0; i < size(); ++i)
    lookup_.emplace(std::make_pair(coords_[i].unknown, coords_[i].mu.exp), i);
}

int SymbolFrame::index_of(int unknown, const MultiIndex& mu) const {
  const auto it = lookup_.find(std::make_pair(unknown, mu.exp));
  if (it == lookup_.end())
    throw std::out_of_range("SymbolFrame: coordinate not in frame: unknown " +
                            std::to_string(unknown) + " mu " + mu.to_string());
  return it->second;
}

}  // namespace jetseq
