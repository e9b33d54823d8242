#include <doctest.h>

#include <random>
#include <vector>

#include "jetseq/exactalg.hpp"

using namespace jetseq;

namespace {

// Plain textbook elimination over fractions, kept deliberately simple and
// separate from the library so the two computations share nothing.
int oracle_rank(const RationalMatrix& m) {
  std::vector<std::vector<Rational>> rows(static_cast<size_t>(m.rows()));
  for (int r = 0; r < m.rows(); ++r) {
    rows[static_cast<size_t>(r)].resize(static_cast<size_t>(m.cols()));
    for (int c = 0; c < m.cols(); ++c) rows[static_cast<size_t>(r)][static_cast<size_t>(c)] = m.at(r, c);
  }
  int rank = 0;
  for (size_t col = 0; col < static_cast<size_t>(m.cols()); ++col) {
    size_t pivot = static_cast<size_t>(rank);
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot >= rows.size()) continue;
    std::swap(rows[static_cast<size_t>(rank)], rows[pivot]);
    for (size_t r = static_cast<size_t>(rank) + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const Rational f = rows[r][col] / rows[static_cast<size_t>(rank)][col];
      for (size_t c = col; c < static_cast<size_t>(m.cols()); ++c) {
        rows[r][c] -= f * rows[static_cast<size_t>(rank)][c];
      }
    }
    ++rank;
  }
  return rank;
}

RationalMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int span) {
  std::uniform_int_distribution<int> entry(-span, span);
  RationalMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.at(r, c) = rat(entry(rng));
  return m;
}

// Rank-deficient by construction: an (r x k) times (k x c) product.
RationalMatrix random_low_rank(std::mt19937_64& rng, int rows, int cols, int k) {
  return random_matrix(rng, rows, k, 3).multiplied_by(random_matrix(rng, k, cols, 3));
}

}  // namespace

TEST_CASE("rank agrees with a plain elimination oracle") {
  std::mt19937_64 rng(20240811);
  std::uniform_int_distribution<int> dim(1, 8);
  for (int trial = 0; trial < 120; ++trial) {
    RationalMatrix m =
        trial % 3 == 0
            ? random_low_rank(rng, dim(rng), dim(rng), 1 + trial % 4)
            : random_matrix(rng, dim(rng), dim(rng), 4);
    const int want = oracle_rank(m);
    CAPTURE(trial);
    CHECK(rank_exact(m) == want);
    CHECK(rank_modular(m, 17) == want);
    CHECK(rank_of(m, RankPolicy{}) == want);
    RankPolicy forced;
    forced.force_exact = true;
    CHECK(rank_of(m, forced) == want);
  }
}

TEST_CASE("rank survives heavy fraction growth") {
  // Cauchy-type matrix: entries 1/(i+j+1). Invertible at every size; naive
  // floating-point elimination loses this long before size 10.
  const int n = 10;
  RationalMatrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h.at(i, j) = rat(1, i + j + 1);
  CHECK(rank_exact(h) == n);
  CHECK(rank_modular(h, 1) == n);

  // Same matrix with the last row overwritten by (row0 + row1): rank drops.
  RationalMatrix sing = h;
  for (int j = 0; j < n; ++j) sing.at(n - 1, j) = h.at(0, j) + h.at(1, j);
  CHECK(rank_exact(sing) == n - 1);
  CHECK(rank_modular(sing, 99) == n - 1);
}

TEST_CASE("reduced echelon form is canonical") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = random_low_rank(rng, 6, 7, 3);
    auto red = rref(m);
    // Idempotent.
    CHECK(rref(red.mat).mat == red.mat);
    // Pivot columns strictly increase and hold a 1 with zeros elsewhere.
    for (size_t i = 0; i < red.pivot_cols.size(); ++i) {
      if (i > 0) CHECK(red.pivot_cols[i - 1] < red.pivot_cols[i]);
      const int pc = red.pivot_cols[i];
      for (int r = 0; r < red.mat.rows(); ++r) {
        CHECK(red.mat.at(r, pc) == (r == static_cast<int>(i) ? 1 : 0));
      }
    }
    // Row space unchanged.
    CHECK(rank_exact(m.stacked_on(red.mat)) == rank_exact(m));
    CHECK(static_cast<int>(red.pivot_cols.size()) == rank_exact(m));
  }
}

TEST_CASE("kernel bases annihilate and have complementary dimension") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_low_rank(rng, 5, 6, 2 + trial % 3);
    const int rank = rank_exact(m);

    auto k = kernel_basis(m);  // columns span the right kernel
    CHECK(k.cols() == m.cols() - rank);
    CHECK(m.multiplied_by(k).is_zero());
    CHECK(rank_exact(k) == k.cols());

    auto lk = left_kernel_basis(m);  // rows span the left kernel
    CHECK(lk.rows() == m.rows() - rank);
    CHECK(lk.multiplied_by(m).is_zero());
    if (lk.rows() > 0) CHECK(rank_exact(lk) == lk.rows());
  }
}

TEST_CASE("modular fast path agrees with exact rank on larger matrices") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 4; ++trial) {
    auto m = random_low_rank(rng, 30, 30, 20);
    const int want = rank_exact(m);
    for (std::uint64_t seed : {0ULL, 1ULL, 12345ULL}) {
      CHECK(rank_modular(m, seed) == want);
    }
  }
}

TEST_CASE("modular primes are prime") {
  CHECK(is_prime_u64(kDefaultModularPrime));
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(3));
  CHECK(is_prime_u64(2305843009213693951ULL));  // 2^61 - 1
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(4));
  CHECK_FALSE(is_prime_u64(2305843009213693951ULL - 2));
}

TEST_CASE("matrix plumbing") {
  RationalMatrix a(2, 3);
  a.at(0, 0) = rat(1);
  a.at(0, 2) = rat(-2, 3);
  a.at(1, 1) = rat(5);

  auto t = a.transposed();
  CHECK(t.rows() == 3);
  CHECK(t.cols() == 2);
  CHECK(t.transposed() == a);

  RationalMatrix b(3, 1);
  b.at(0, 0) = rat(3);
  b.at(1, 0) = rat(0);
  b.at(2, 0) = rat(9);
  auto p = a.multiplied_by(b);
  CHECK(p.rows() == 2);
  CHECK(p.cols() == 1);
  CHECK(p.at(0, 0) == rat(-3));  // 3 - (2/3)*9
  CHECK(p.at(1, 0) == 0);

  auto s = a.stacked_on(a);
  CHECK(s.rows() == 4);
  CHECK(rank_exact(s) == rank_exact(a));
  CHECK_FALSE(a.is_zero());
  CHECK(RationalMatrix(2, 2).is_zero());
}
