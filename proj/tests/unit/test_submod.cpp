#include "pgrouplab/submod.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

using namespace pgl;
using namespace pgl::submod;
using fplin::FpMat;

namespace {

int mobius(int n) {
  int r = 1;
  for (int f = 2; f * f <= n; ++f) {
    if (n % f) continue;
    n /= f;
    if (n % f == 0) return 0;
    r = -r;
  }
  return n > 1 ? -r : r;
}

// Necklace count of monic irreducibles of degree k.
long long irreducible_count(int p, int k) {
  long long s = 0, pj = 1;
  for (int j = 1; j <= k; ++j) {
    pj *= p;
    if (k % j == 0) s += mobius(k / j) * pj;
  }
  return s / k;
}

FpMat companion(const FpPoly& f, int p) {
  int n = static_cast<int>(f.size()) - 1;
  FpMat c(n, n, p);
  for (int i = 1; i < n; ++i) c.set(i, i - 1, 1);
  for (int i = 0; i < n; ++i) c.set(i, n - 1, -f[i]);
  return c;
}

FpPoly poly_mul(const FpPoly& a, const FpPoly& b, int p) {
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return r;
}

FpPoly poly_pow(const FpPoly& f, int e, int p) {
  FpPoly r{1};
  for (int i = 0; i < e; ++i) r = poly_mul(r, f, p);
  return r;
}

FpMat block_diag(const std::vector<FpMat>& blocks, int p) {
  int n = 0;
  for (const auto& b : blocks) n += b.rows();
  FpMat m(n, n, p);
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) m.set(off + i, off + j, b.at(i, j));
    off += b.rows();
  }
  return m;
}

FpMat eval(const FpPoly& f, const FpMat& g) {
  FpMat r(g.rows(), g.cols(), g.modulus());
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * g + FpMat::scalar(g.rows(), g.modulus(), *it);
  return r;
}

std::map<std::string, Partition> as_map(const PrimaryDecomposition& d) {
  std::map<std::string, Partition> out;
  for (const auto& c : d.components) out.emplace(poly_to_string(c.f), c.mu);
  return out;
}

template <class F>
void for_grid(int m, int p, std::size_t samples, std::uint64_t seed, F body) {
  if (fplin::gl_order(m, p) <= 1000000) {
    fplin::for_each_gl(m, p, body);
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) body(fplin::random_gl(m, p, rng));
  }
}

}  // namespace

TEST(SubmoduleCount, Examples) {
  EXPECT_EQ(submodule_count({2}, {1}, 2), 3);
  EXPECT_EQ(submodule_count({1, 1}, {1}, 2), 1);
  EXPECT_EQ(submodule_count({3, 1}, {}, 5), 1);
  EXPECT_EQ(submodule_count({1}, {2}, 2), 0);
  EXPECT_EQ(submodule_count({2, 2}, {1, 1, 1}, 3), 0);
  EXPECT_EQ(total_submodules({2}, 2), 5);
  EXPECT_EQ(total_submodules({1, 1}, 2), 3);
  EXPECT_EQ(total_submodules({1}, 3), 2);
  // Elementary abelian modules: totals are Galois numbers.
  for (int n = 1; n <= 6; ++n)
    for (int q : {2, 3, 4, 5}) EXPECT_EQ(total_submodules(Partition{n}, q), qcombin::galois_number(n, q));
  // Cyclic module of length n: a chain with n + 1 submodules.
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(total_submodules(Partition(std::vector<int>(n, 1)), 7), n + 1);
}

TEST(AbelianOracle, Examples) {
  EXPECT_EQ(abelian_subgroup_oracle(2, {1, 1}, {1}), 3);
  EXPECT_EQ(abelian_subgroup_oracle(3, {2}, {1}), 1);
  EXPECT_EQ(abelian_subgroup_oracle(2, {2, 1}, {2, 1}), 1);
  EXPECT_EQ(abelian_subgroup_oracle(5, {1}, {}), 1);
  EXPECT_EQ(abelian_subgroup_oracle(2, {1}, {2}), 0);
  EXPECT_THROW(abelian_subgroup_oracle(2, {13}, {1}), ResourceGuardError);
}

TEST(SubmoduleCount, MatchesSubgroupOracle) {
  for (int p : {2, 3})
    for (int n = 1; n <= 5; ++n)
      for (const auto& alpha : qcombin::partitions_of(n))
        for (const auto& beta : qcombin::subpartitions(alpha))
          EXPECT_EQ(submodule_count(alpha, beta, p), abelian_subgroup_oracle(p, alpha.conjugate(), beta.conjugate()))
              << "p=" << p << " alpha=" << alpha.to_string() << " beta=" << beta.to_string();
}

TEST(Irreducibles, CountsAndOrder) {
  for (int p : {2, 3, 5})
    for (int k = 1; k <= 4; ++k) {
      auto irr = monic_irreducibles(p, k);
      EXPECT_EQ(static_cast<long long>(irr.size()), irreducible_count(p, k));
      for (const auto& f : irr) EXPECT_EQ(f.back(), 1);
    }
  auto quad2 = monic_irreducibles(2, 2);
  ASSERT_EQ(quad2.size(), 1u);
  EXPECT_EQ(quad2[0], (FpPoly{1, 1, 1}));
}

TEST(Decompose, Examples) {
  auto id = decompose(FpMat::identity(2, 2));
  ASSERT_EQ(id.components.size(), 1u);
  EXPECT_EQ(id.components[0].f, (FpPoly{1, 1}));
  EXPECT_EQ(id.components[0].mu, (Partition{1, 1}));

  auto jordan = decompose(FpMat(2, 2, 2, {1, 1, 0, 1}));
  ASSERT_EQ(jordan.components.size(), 1u);
  EXPECT_EQ(jordan.components[0].mu, Partition{2});

  auto comp = decompose(FpMat(2, 2, 2, {0, 1, 1, 1}));
  ASSERT_EQ(comp.components.size(), 1u);
  EXPECT_EQ(comp.components[0].f, (FpPoly{1, 1, 1}));
  EXPECT_EQ(comp.components[0].mu, Partition{1});

  EXPECT_THROW(decompose(FpMat(2, 2, 3, {1, 2, 2, 1})), std::domain_error);
}

TEST(Decompose, RecoversPlantedStructure) {
  struct Plant {
    int p;
    std::vector<std::pair<FpPoly, std::vector<int>>> parts;
  };
  std::vector<Plant> plants = {
      {2, {{{1, 1, 1}, {2}}}},
      {2, {{{1, 1}, {2, 1}}, {{1, 1, 0, 1}, {1}}}},
      {3, {{{2, 1}, {2, 1}}, {{1, 1}, {1}}}},
      {3, {{{1, 0, 1}, {1, 1}}, {{1, 1}, {3}}}},
      {5, {{{2, 1}, {1, 1, 1}}, {{2, 0, 1}, {2}}}},
      {2, {{{1, 1}, {3, 2, 1, 1}}}},
  };
  std::mt19937_64 rng(31);
  for (const auto& plant : plants) {
    std::vector<FpMat> blocks;
    std::map<std::string, Partition> expected;
    for (const auto& [f, mu] : plant.parts) {
      for (int e : mu) blocks.push_back(companion(poly_pow(f, e, plant.p), plant.p));
      expected.emplace(poly_to_string(f), Partition(mu));
    }
    auto g = block_diag(blocks, plant.p);
    for (int trial = 0; trial < 5; ++trial) {
      auto h = fplin::random_gl(g.rows(), plant.p, rng);
      auto dec = decompose(h * g * h.inverse());
      EXPECT_EQ(as_map(dec), expected);
      EXPECT_EQ(dec.dimension(), g.rows());
    }
  }
}

TEST(Decompose, MinimalPolynomialAnnihilates) {
  std::mt19937_64 rng(8);
  for (int p : {2, 3, 5})
    for (int m = 1; m <= 6; ++m)
      for (int i = 0; i < 20; ++i) {
        auto g = fplin::random_gl(m, p, rng);
        auto f = minimal_polynomial(g);
        EXPECT_EQ(f.back(), 1);
        EXPECT_EQ(eval(f, g), FpMat(m, m, p));
        // No lower-degree relation: I, g, ..., g^{k-1} are independent.
        int k = static_cast<int>(f.size()) - 1;
        FpMat powers(k, m * m, p);
        FpMat gi = FpMat::identity(m, p);
        for (int r = 0; r < k; ++r, gi = gi * g)
          for (int c = 0; c < m * m; ++c) powers.set(r, c, gi.entries()[c]);
        EXPECT_EQ(powers.rank(), k);
      }
}

TEST(Decompose, ConjugationInvariance) {
  std::mt19937_64 rng(12);
  for (int p : {2, 3, 5})
    for (int m = 2; m <= 6; ++m)
      for (int i = 0; i < 20; ++i) {
        auto g = fplin::random_gl(m, p, rng), h = fplin::random_gl(m, p, rng);
        auto a = decompose(g), b = decompose(h * g * h.inverse());
        EXPECT_EQ(as_map(a), as_map(b));
        EXPECT_EQ(a.dimension(), m);
      }
}

TEST(StructuralCount, MatchesInvariantSubspaces) {
  for (int p : {2, 3})
    for (int m = 1; m <= 4; ++m)
      for_grid(m, p, 500, 40 + m, [&](const FpMat& g) {
        ASSERT_EQ(structural_sm(decompose(g)), fplin::invariant_subspace_count(g)) << g.to_string();
      });
}

TEST(UpperBound, Examples) {
  auto s = sm_value_and_bound(FpMat::identity(3, 2));
  EXPECT_TRUE(s.scalar_case);
  EXPECT_EQ(s.sm, 16);
  EXPECT_TRUE(s.holds);

  auto u = sm_value_and_bound(FpMat(2, 2, 2, {1, 1, 0, 1}));
  EXPECT_FALSE(u.scalar_case);
  EXPECT_EQ(u.sm, 3);
  EXPECT_TRUE(u.holds);
  EXPECT_NEAR(u.bound.value, 0.5 + 2 * epsilon(2).value, 1e-9);

  auto c = sm_value_and_bound(FpMat(2, 2, 2, {0, 1, 1, 1}));
  EXPECT_EQ(c.sm, 2);
  EXPECT_TRUE(c.holds);
}

TEST(UpperBound, HoldsOnGrid) {
  for (int p : {2, 3, 5})
    for (int m = 2; m <= 4; ++m) {
      std::size_t checked = 0;
      for_grid(m, p, 10000, 1000 + 10 * p + m, [&](const FpMat& g) {
        auto r = sm_value_and_bound(g);
        if (r.scalar_case) {
          EXPECT_TRUE(g.is_scalar());
          EXPECT_EQ(r.sm, qcombin::galois_number(m, p));
        }
        EXPECT_TRUE(r.holds) << g.to_string();
        ++checked;
      });
      EXPECT_GT(checked, 0u);
    }
}

TEST(StrongerBound, Examples) {
  for (int p : {2, 3, 5}) {
    double eps = epsilon(p).value;
    EXPECT_NEAR(stronger_bound(3, p).value, 0.25 + eps + 2, 1e-9);
    EXPECT_NEAR(stronger_bound(6, p).value, 1.0 + eps + 8, 1e-9);
    EXPECT_NEAR(stronger_bound(45, p).value, 41.0 * 41 / 4 + eps + 86, 1e-9);
    EXPECT_NEAR(stronger_bound(55, p).value, 51.0 * 51 / 4 + 5 * eps + 4, 1e-9);
  }
  EXPECT_THROW(stronger_bound(4, 3), std::invalid_argument);
  EXPECT_THROW(stronger_bound(1, 3), std::invalid_argument);
}

TEST(StrongerBound, HoldsOnWedgeModules) {
  for (int p : {3, 5})
    for (int d : {2, 3}) {
      int m = d + d * (d - 1) / 2;
      auto rhs = stronger_bound(m, p);
      std::mt19937_64 rng(p * 100 + d);
      std::size_t done = 0;
      auto check = [&](const FpMat& g) {
        if (g == FpMat::identity(d, p)) return;
        auto w = fplin::wedge_matrix(g);
        auto sm = structural_sm(decompose(w));
        if (done++ % 97 == 0 && m <= 3) EXPECT_EQ(sm, fplin::invariant_subspace_count(w));
        EXPECT_TRUE(qcombin::certainly_le(log_base(sm, p), rhs)) << g.to_string();
      };
      if (d == 3 && p == 5) {
        for (int i = 0; i < 3000; ++i) check(fplin::random_gl(d, p, rng));
      } else {
        fplin::for_each_gl(d, p, check);
      }
    }
}

TEST(Epsilon, AtMostSix) {
  double prev = 1e9;
  for (int p : {2, 3, 5, 7, 11, 13, 101, 1009}) {
    auto e = epsilon(p);
    EXPECT_LE(e.hi(), 6.0);
    EXPECT_GT(e.lo(), 0.0);
    EXPECT_LT(e.value, prev);
    prev = e.value;
  }
}
