#include "jetseq/exactalg.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace jetseq {

Rational rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational rat_str(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("rat_str: bad literal: " + s);
  r.canonicalize();
  return r;
}

bool RationalMatrix::is_zero() const {
  for (const auto& v : data_)
    if (sgn(v) != 0) return false;
  return true;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RationalMatrix RationalMatrix::multiplied_by(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  RationalMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = at(i, k);
      if (sgn(a) == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) {
        const Rational& b = rhs.at(k, j);
        if (sgn(b) != 0) out.at(i, j) += a * b;
      }
    }
  return out;
}

RationalMatrix RationalMatrix::stacked_on(const RationalMatrix& below) const {
  if (rows_ == 0 && cols_ == 0) return below;
  if (below.rows() == 0 && below.cols() == 0) return *this;
  if (cols_ != below.cols()) throw std::invalid_argument("stack: column mismatch");
  RationalMatrix out(rows_ + below.rows(), cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
  for (int i = 0; i < below.rows(); ++i)
    for (int j = 0; j < cols_; ++j) out.at(rows_ + i, j) = below.at(i, j);
  return out;
}

RationalMatrix RationalMatrix::row(int i) const {
  RationalMatrix out(1, cols_);
  for (int j = 0; j < cols_; ++j) out.at(0, j) = at(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// Exact rank: Bareiss fraction-free elimination over the integers.

int rank_exact(const RationalMatrix& m) {
  const int rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return 0;

  // Clear denominators row by row; scaling rows does not change rank.
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
  for (int i = 0; i < rows; ++i) {
    BigInt lcm = 1;
    for (int j = 0; j < cols; ++j) {
      const BigInt den = m.at(i, j).get_den();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    for (int j = 0; j < cols; ++j) {
      const Rational& v = m.at(i, j);
      a[i][j] = v.get_num() * (lcm / v.get_den());
    }
  }

  BigInt prev = 1;
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (sgn(a[i][col]) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[r], a[pivot]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j) {
        BigInt t = a[r][col] * a[i][j] - a[i][col] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[r][col];
    ++r;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Modular rank.

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t p) {
  uint64_t acc = 1;
  base %= p;
  while (exp) {
    if (exp & 1) acc = mulmod_u64(acc, base, p);
    base = mulmod_u64(base, base, p);
    exp >>= 1;
  }
  return acc;
}

uint64_t invmod_u64(uint64_t a, uint64_t p) { return powmod_u64(a, p - 2, p); }

// Reduce a matrix mod p. Returns false when some denominator vanishes mod p
// (unlucky prime for the reduction itself).
bool reduce_mod(const RationalMatrix& m, uint64_t p, std::vector<uint64_t>& out) {
  const int rows = m.rows(), cols = m.cols();
  out.assign(static_cast<size_t>(rows) * cols, 0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const Rational& v = m.at(i, j);
      if (sgn(v) == 0) continue;
      uint64_t den = mpz_fdiv_ui(v.get_den().get_mpz_t(), p);
      if (den == 0) return false;
      uint64_t num = mpz_fdiv_ui(v.get_num().get_mpz_t(), p);
      out[static_cast<size_t>(i) * cols + j] = mulmod_u64(num, invmod_u64(den, p), p);
    }
  return true;
}

int rank_mod_p(std::vector<uint64_t>& a, int rows, int cols, uint64_t p) {
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (a[static_cast<size_t>(i) * cols + col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = col; j < cols; ++j)
        std::swap(a[static_cast<size_t>(pivot) * cols + j],
                  a[static_cast<size_t>(r) * cols + j]);
    const uint64_t inv = invmod_u64(a[static_cast<size_t>(r) * cols + col], p);
    for (int i = r + 1; i < rows; ++i) {
      uint64_t f = a[static_cast<size_t>(i) * cols + col];
      if (f == 0) continue;
      f = mulmod_u64(f, inv, p);
      a[static_cast<size_t>(i) * cols + col] = 0;
      for (int j = col + 1; j < cols; ++j) {
        uint64_t& x = a[static_cast<size_t>(i) * cols + j];
        const uint64_t y = a[static_cast<size_t>(r) * cols + j];
        if (y != 0) x = (x + p - mulmod_u64(f, y, p)) % p;
      }
    }
    ++r;
  }
  return r;
}

uint64_t fresh_prime(std::mt19937_64& rng) {
  for (;;) {
    uint64_t c = (rng() | 1ULL) % (1ULL << 62);
    if (c < (1ULL << 61)) c += (1ULL << 61);
    if (is_prime_u64(c)) return c;
  }
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                     29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit integers.
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                     29ULL, 31ULL, 37ULL}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

int rank_modular(const RationalMatrix& m, uint64_t seed, int confirmations) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  std::mt19937_64 rng(seed);
  std::vector<uint64_t> work;
  std::vector<int> ranks;
  uint64_t p = kDefaultModularPrime;
  const int wanted = confirmations + 1;
  for (int attempt = 0; attempt < wanted + 6; ++attempt) {
    if (reduce_mod(m, p, work)) {
      ranks.push_back(rank_mod_p(work, m.rows(), m.cols(), p));
      const int best = *std::max_element(ranks.begin(), ranks.end());
      if (static_cast<int>(std::count(ranks.begin(), ranks.end(), best)) >= wanted)
        return best;
    }
    p = fresh_prime(rng);
  }
  return rank_exact(m);  // primes would not settle; certainty wins
}

int rank_of(const RationalMatrix& m, const RankPolicy& policy) {
  if (policy.force_exact) return rank_exact(m);
  if (m.rows() < policy.exact_threshold && m.cols() < policy.exact_threshold) {
    const int exact = rank_exact(m);
    const int fast = rank_modular(m, policy.seed, 0);
    if (exact != fast)
      throw std::logic_error("rank_of: modular path disagrees with exact rank");
    return exact;
  }
  return rank_modular(m, policy.seed);
}

// ---------------------------------------------------------------------------
// Reduced row echelon form and kernels (always exact).

RrefResult rref(const RationalMatrix& m, const std::vector<int>& column_order) {
  const int rows = m.rows(), cols = m.cols();
  if (static_cast<int>(column_order.size()) != cols)
    throw std::invalid_argument("rref: column_order size mismatch");

  RationalMatrix a = m;
  std::vector<int> pivots;
  int r = 0;
  for (int pos = 0; pos < cols && r < rows; ++pos) {
    const int col = column_order[pos];
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (sgn(a.at(i, col)) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = 0; j < cols; ++j) std::swap(a.at(pivot, j), a.at(r, j));
    const Rational inv = 1 / a.at(r, col);
    for (int j = 0; j < cols; ++j)
      if (sgn(a.at(r, j)) != 0) a.at(r, j) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Rational f = a.at(i, col);
      if (sgn(f) == 0) continue;
      for (int j = 0; j < cols; ++j) {
        if (sgn(a.at(r, j)) != 0) a.at(i, j) -= f * a.at(r, j);
      }
    }
    pivots.push_back(col);
    ++r;
  }

  RationalMatrix out(r, cols);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < cols; ++j) out.at(i, j) = a.at(i, j);
  return {std::move(out), std::move(pivots)};
}

RrefResult rref(const RationalMatrix& m) {
  std::vector<int> order(m.cols());
  std::iota(order.begin(), order.end(), 0);
  return rref(m, order);
}

RationalMatrix kernel_basis(const RationalMatrix& m) {
  const RrefResult r = rref(m);
  const int cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (int c : r.pivot_cols) is_pivot[c] = true;

  std::vector<int> free_cols;
  for (int j = 0; j < cols; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  RationalMatrix basis(cols, static_cast<int>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    const int f = free_cols[k];
    basis.at(f, static_cast<int>(k)) = 1;
    for (int i = 0; i < r.mat.rows(); ++i)
      basis.at(r.pivot_cols[i], static_cast<int>(k)) = -r.mat.at(i, f);
  }
  return basis;
}

RationalMatrix left_kernel_basis(const RationalMatrix& m) {
  return kernel_basis(m.transposed()).transposed();
}

}  // namespace jetseq
