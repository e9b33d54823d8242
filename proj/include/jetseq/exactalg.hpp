#pragma once
// Exact rational linear algebra on dense matrices.
//
// Rationals are GMP mpq_class values. mpq_class arithmetic keeps results
// canonical (gcd(num,den) = 1, den > 0) as long as inputs are canonical, so
// construction goes through rat()/rat_str() which canonicalize explicitly.
//
// Rank comes in two flavours:
//   - rank_exact: fraction-free (Bareiss) elimination over the integers after
//     clearing row denominators. No growth surprises, always correct.
//   - rank_modular: Gaussian elimination over Z/p for a fixed 62-bit prime,
//     confirmed with fresh random primes. A modular rank can only undershoot,
//     so agreement across primes is taken as certification; disagreement
//     falls back to the exact path.
// rref/kernel_basis are always exact (their output feeds later algebra).

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace jetseq {

using Rational = mpq_class;
using BigInt = mpz_class;

Rational rat(long num, long den = 1);
Rational rat_str(const std::string& s);  // "-3", "7/2", ...

class RationalMatrix {
 public:
  RationalMatrix() : rows_(0), cols_(0) {}
  RationalMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Rational& at(int i, int j) const {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  bool is_zero() const;
  RationalMatrix transposed() const;
  RationalMatrix multiplied_by(const RationalMatrix& rhs) const;

  // Rows of `below` appended under *this (column counts must match).
  RationalMatrix stacked_on(const RationalMatrix& below) const;
  RationalMatrix row(int i) const;

  bool operator==(const RationalMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
  }

 private:
  int rows_;
  int cols_;
  std::vector<Rational> data_;
};

// Fixed 62-bit prime used as the first modular attempt; retries draw fresh
// primes from a seeded stream so runs are reproducible.
inline constexpr uint64_t kDefaultModularPrime = 4611686018427387847ULL;

bool is_prime_u64(uint64_t n);

int rank_exact(const RationalMatrix& m);
// Modular rank with `confirmations` extra primes; falls back to rank_exact
// when the primes cannot agree (astronomically unlikely, but handled).
int rank_modular(const RationalMatrix& m, uint64_t seed, int confirmations = 2);

struct RankPolicy {
  bool force_exact = false;
  uint64_t seed = 0;
  // Matrices with both dimensions below this bound use the exact path (and
  // a modular cross-check, which doubles as a self-test of the fast path).
  int exact_threshold = 200;
};
int rank_of(const RationalMatrix& m, const RankPolicy& policy = {});

struct RrefResult {
  RationalMatrix mat;           // reduced rows, zero rows dropped
  std::vector<int> pivot_cols;  // per surviving row, in row order
};
// Pivot search follows column_order (a permutation of 0..cols-1): the pivot
// set is the lexicographically earliest independent column set in that order.
RrefResult rref(const RationalMatrix& m, const std::vector<int>& column_order);
RrefResult rref(const RationalMatrix& m);

// Basis of {v : m v = 0}, one column per free column of rref(m) in natural
// column order (reduced column echelon form, deterministic).
RationalMatrix kernel_basis(const RationalMatrix& m);
// Rows c with c m = 0; rows are the transposed kernel basis of m^T.
RationalMatrix left_kernel_basis(const RationalMatrix& m);

}  // namespace jetseq
