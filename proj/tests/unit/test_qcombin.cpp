#include "pgrouplab/qcombin.hpp"
#include "small_field.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pgl;
using namespace pgl::qcombin;

TEST(GaussBinom, MatchesSubspaceEnumeration) {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    auto F = oracle::field_of_order(q);
    for (int n = 0; n <= 4; ++n) {
      auto counts = oracle::subspace_counts(F, n);
      for (int k = 0; k <= n; ++k)
        EXPECT_EQ(gauss_binom(n, k, q), ExactInt(counts[k])) << "q=" << q << " n=" << n << " k=" << k;
    }
  }
}

TEST(GaussBinom, Examples) {
  EXPECT_EQ(gauss_binom(4, 2, 2), 35);
  EXPECT_EQ(gauss_binom(7, 0, 5), 1);
  EXPECT_EQ(gauss_binom(3, 1, 3), 13);
  EXPECT_EQ(gauss_binom(3, -1, 2), 0);
  EXPECT_EQ(gauss_binom(3, 4, 2), 0);
  EXPECT_THROW(gauss_binom(3, 1, 1), std::invalid_argument);
}

TEST(GaussBinom, SymmetryAndPascal) {
  for (int q : {2, 3, 4, 5, 7, 8, 9})
    for (int n = 0; n <= 12; ++n)
      for (int k = 0; k <= n; ++k) {
        EXPECT_EQ(gauss_binom(n, k, q), gauss_binom(n, n - k, q));
        if (n >= 1)
          EXPECT_EQ(gauss_binom(n, k, q),
                    gauss_binom(n - 1, k - 1, q) + ipow(ExactInt(q), k) * gauss_binom(n - 1, k, q));
      }
}

TEST(GaloisNumber, Examples) {
  EXPECT_EQ(galois_number(3, 2), 16);
  EXPECT_EQ(galois_number(0, 3), 1);
  EXPECT_EQ(galois_number(2, 3), 6);
  for (int q : {2, 3, 5})
    for (int n = 0; n <= 4; ++n) {
      auto counts = oracle::subspace_counts(oracle::field_of_order(q), n);
      long long total = 0;
      for (auto c : counts) total += c;
      EXPECT_EQ(galois_number(n, q), ExactInt(total));
    }
}

TEST(SN, Examples) {
  EXPECT_EQ(s_n(2, 2), 4);
  EXPECT_EQ(s_n(0, 7), 1);
  EXPECT_EQ(s_n(3, 2), 10);
}

TEST(Series, CKnownRanges) {
  auto c2 = c_series(2.0);
  EXPECT_GT(c2.lo(), 2.0);
  EXPECT_LT(c2.hi(), 9.0 / 4.0);
  auto big = c_series(1e6);
  EXPECT_NEAR(big.value, 1.0, 3e-6);
  // Direct summation at two depths.
  auto c4 = c_series(4.0);
  double shallow = 1.0, deep = 1.0;
  for (int r = 1; r <= 3; ++r) shallow += 2.0 * std::pow(4.0, -r * r);
  for (int r = 1; r <= 8; ++r) deep += 2.0 * std::pow(4.0, -r * r);
  EXPECT_NEAR(c4.value, deep, c4.abs_error + 1e-15);
  EXPECT_LE(std::abs(deep - shallow), 2.0 * std::pow(4.0, -16) * 1.01);
  EXPECT_THROW(c_series(1.0), std::domain_error);
}

TEST(Series, DKnownRanges) {
  auto d2 = d_series(2.0);
  EXPECT_GT(d2.lo(), 3.0);
  EXPECT_LT(d2.hi(), 3.5);
  EXPECT_NEAR(d_series(1e6).value, 1.0, 2e-6);
  double partial = 1.0;
  for (int j = 1; j <= 64; ++j) partial /= (1.0 - std::pow(3.0, -j));
  auto d3 = d_series(3.0);
  EXPECT_NEAR(d3.value, partial, d3.abs_error + 1e-14);
  EXPECT_THROW(d_series(0.5), std::domain_error);
}

TEST(Series, MonotoneAndAboveOne) {
  double prev_c = HUGE_VAL, prev_d = HUGE_VAL;
  for (int i = 1; i <= 400; ++i) {
    double x = 1.0 + 0.05 * i;
    auto c = c_series(x);
    auto d = d_series(x);
    EXPECT_LT(c.value, prev_c);
    EXPECT_LT(d.value, prev_d);
    EXPECT_GE(c.lo(), 1.0);
    EXPECT_GE(d.lo(), 1.0);
    prev_c = c.value;
    prev_d = d.value;
  }
  // Smallest base in use.
  auto c_small = c_series(std::pow(2.0, 15.0 / 16.0));
  EXPECT_TRUE(std::isfinite(c_small.value));
  EXPECT_LT(c_small.abs_error, 1e-11);
}

TEST(Qests, Grid) {
  for (long long q : {2, 3, 5, 7, 9})
    for (int n = 1; n <= 12; ++n) EXPECT_TRUE(check_qests(n, q).all()) << "n=" << n << " q=" << q;
}

TEST(Polybound, Examples) {
  auto a = polybound_check(1, 0, 0, -3, 3, 2);
  EXPECT_TRUE(a.holds);
  EXPECT_DOUBLE_EQ(a.argmax, 0.0);
  auto b = polybound_check(1, 5, 0, 0, 5, 2);
  EXPECT_TRUE(b.holds);
  EXPECT_DOUBLE_EQ(b.argmax, 2.5);
  double direct = 0;
  for (int r = 0; r <= 5; ++r) direct += std::pow(2.0, -r * r + 5 * r);
  EXPECT_NEAR(b.sum, direct, 1e-9);
  auto c = polybound_check(2, 1, 1, 1, 4, 3);
  EXPECT_TRUE(c.holds);
  EXPECT_DOUBLE_EQ(c.argmax, 1.0);
}

TEST(Quadbound, Examples) {
  auto a = quadbound_check({1, 1, 1}, 0);
  EXPECT_TRUE(a.first_holds);
  EXPECT_EQ(a.sum_squares, 3);
  EXPECT_EQ(a.first_rhs, 3);
  auto b = quadbound_check({3, 1}, 0.5);
  EXPECT_TRUE(b.first_holds);
  EXPECT_TRUE(b.second_applies);
  EXPECT_TRUE(b.second_holds);
  auto c = quadbound_check({5}, 0);
  EXPECT_EQ(c.sum_squares, 25);
  EXPECT_EQ(c.first_rhs, 25);
  EXPECT_FALSE(c.second_applies);
}

TEST(Quadbound, AllCompositionsUpToTen) {
  for (int n = 1; n <= 10; ++n)
    for (const auto& lam : partitions_of(n))
      for (double eps : {0.0, 0.5, 1.0, 2.5}) {
        auto r = quadbound_check(lam.parts(), eps);
        EXPECT_TRUE(r.first_holds);
        if (r.second_applies) EXPECT_TRUE(r.second_holds);
      }
}

TEST(PartitionType, ConjugateAndContainment) {
  Partition lam{4, 2, 1};
  EXPECT_EQ(lam.conjugate(), (Partition{3, 2, 1, 1}));
  EXPECT_EQ(lam.conjugate().conjugate(), lam);
  EXPECT_EQ(Partition({2, 0, 0}), Partition{2});
  EXPECT_THROW(Partition({1, 2}), std::invalid_argument);
  EXPECT_TRUE((Partition{2, 1}).contained_in(lam));
  EXPECT_FALSE((Partition{2, 2, 2}).contained_in(lam));
  EXPECT_EQ(partitions_of(5).size(), 7u);
  EXPECT_EQ(subpartitions(Partition{2, 1}).size(), 5u);  // (), 1, 2, 11, 21
  for (int n = 0; n <= 8; ++n)
    for (const auto& p : partitions_of(n)) EXPECT_EQ(p.conjugate().conjugate(), p);
}
