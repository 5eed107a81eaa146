#include "pgrouplab/groups.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

using namespace pgl;
using namespace pgl::groups;

namespace {

// Every closed subset containing the identity, by exhaustive subset scan.
std::vector<ElementSet> subgroups_by_subsets(const CayleyGroup& G) {
  std::vector<ElementSet> out;
  int n = G.order();
  for (long mask = 0; mask < (1L << (n - 1)); ++mask) {
    ElementSet s;
    s.set(0);
    for (int i = 1; i < n; ++i)
      if (mask >> (i - 1) & 1) s.set(static_cast<std::size_t>(i));
    if (n % static_cast<int>(s.count())) continue;
    bool closed = true;
    for (int a = 0; a < n && closed; ++a)
      for (int b = 0; b < n && closed; ++b)
        if (s.test(a) && s.test(b) && !s.test(G.mul(a, b))) closed = false;
    if (closed) out.push_back(s);
  }
  return out;
}

// Automorphisms counted over all permutations fixing the identity.
long aut_by_permutations(const CayleyGroup& G) {
  std::vector<int> perm(G.order());
  std::iota(perm.begin(), perm.end(), 0);
  long count = 0;
  do {
    if (is_automorphism(G, perm)) ++count;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return count;
}

std::vector<CayleyGroup> catalog_groups(const std::string& id) {
  std::vector<CayleyGroup> out;
  for (auto& e : bundled_catalog(id)) out.push_back(e.group);
  return out;
}

int prime_of(const CayleyGroup& G) {
  int p = 2;
  while (G.order() % p) ++p;
  return p;
}

bool subset_of(const Subgroup& a, const Subgroup& b) { return (a.members & ~b.members).none(); }

}  // namespace

TEST(Builders, Examples) {
  auto d8 = dihedral(8);
  EXPECT_EQ(d8.order(), 8);
  EXPECT_EQ(center(d8).size(), 2);
  auto ut = extraspecial(3, true);
  EXPECT_EQ(ut.order(), 27);
  EXPECT_EQ(ut.exponent(), 3);
  EXPECT_EQ(extraspecial(3, false).exponent(), 9);
  auto v4 = abelian({2, 2});
  EXPECT_EQ(v4.order(), 4);
  EXPECT_TRUE(v4.is_abelian());
  EXPECT_FALSE(quaternion(8).is_abelian());
  EXPECT_EQ(quaternion(8).exponent(), 4);
  EXPECT_EQ(semidihedral(16).order(), 16);
  EXPECT_EQ(modular(2, 4).exponent(), 8);
  EXPECT_EQ(unitriangular(4, 2).order(), 64);
  EXPECT_EQ(wreath_cp_cp(3).order(), 81);
  EXPECT_EQ(center(central_product(dihedral(8), 2, cyclic(4), 2)).size(), 4);
  EXPECT_EQ(central_product(dihedral(8), 2, dihedral(8), 2).order(), 32);
}

TEST(Builders, Validation) {
  EXPECT_THROW(cyclic(257), ResourceGuardError);
  EXPECT_THROW(abelian({16, 17}), ResourceGuardError);
  EXPECT_THROW(dihedral(7), std::invalid_argument);
  EXPECT_THROW(metacyclic("bad", 5, 2, 2, 0), std::invalid_argument);
  EXPECT_THROW(extraspecial(2, true), std::invalid_argument);
  std::vector<std::uint16_t> not_latin{0, 1, 1, 1};
  EXPECT_THROW(CayleyGroup("x", 2, not_latin), std::invalid_argument);
  // Latin square that is not associative: a loop of order 5.
  std::vector<std::uint16_t> loop{0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  EXPECT_THROW(CayleyGroup("loop", 5, loop), std::invalid_argument);
}

TEST(LowerPSeries, AbelianTypes) {
  for (int p : {2, 3})
    for (int k = 1; k <= (p == 2 ? 6 : 4); ++k)
      for (const auto& lambda : qcombin::partitions_of(k)) {
        auto G = abelian_of_type(lambda, p);
        auto series = lower_p_series(G, p);
        ASSERT_EQ(static_cast<int>(series.size()) - 1, lambda[0]);
        for (int i = 1; i <= lambda[0] + 1; ++i) {
          int expected_log = 0;
          for (int part : lambda.parts()) expected_log += std::max(part - i + 1, 0);
          EXPECT_EQ(series[i - 1].size(), static_cast<int>(ipow(ExactInt(p), expected_log)));
        }
      }
}

TEST(LowerPSeries, UnitriangularMatchesPositionPattern) {
  for (auto [n, p] : {std::pair{3, 3}, std::pair{4, 2}}) {
    auto G = unitriangular(n, p);
    auto series = lower_p_series(G, p);
    ASSERT_EQ(static_cast<int>(series.size()), n);
    for (int i = 1; i <= n; ++i) {
      Subgroup expected;
      for (int x = 0; x < G.order(); ++x) {
        std::istringstream in(G.labels()[x]);
        std::vector<int> entries;
        std::string tok;
        while (in >> tok) {
          tok.erase(std::remove_if(tok.begin(), tok.end(), [](char c) { return !std::isdigit(c); }), tok.end());
          if (!tok.empty()) entries.push_back(std::stoi(tok));
        }
        ASSERT_EQ(static_cast<int>(entries.size()), n * n);
        bool zero_band = true;
        for (int j = 0; j < n; ++j)
          for (int k = j + 1; k < n; ++k)
            if (k - j < i && entries[j * n + k] != 0) zero_band = false;
        if (zero_band) expected.members.set(static_cast<std::size_t>(x));
      }
      EXPECT_EQ(series[i - 1], expected) << "n=" << n << " i=" << i;
    }
  }
}

TEST(LowerPSeries, DihedralAndErrors) {
  auto series = lower_p_series(dihedral(8), 2);
  ASSERT_EQ(series.size(), 3u);
  EXPECT_EQ(series[0].size(), 8);
  EXPECT_EQ(series[1].size(), 2);
  EXPECT_EQ(series[2].size(), 1);
  EXPECT_THROW(lower_p_series(cyclic(6), 2), std::invalid_argument);
  EXPECT_THROW(frattini(cyclic(6), 3), std::invalid_argument);
}

TEST(LowerPSeries, SeriesPropertiesOnCatalog) {
  for (const auto& e : bundled_catalog("small")) {
    const auto& G = e.group;
    int p = e.p;
    auto s = lower_p_series(G, p);
    auto term = [&](std::size_t i) { return i < s.size() ? s[i] : trivial(G); };
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      // Factor is elementary abelian and central.
      for (int x : s[i].elements()) {
        EXPECT_TRUE(s[i + 1].contains(G.power(x, p))) << G.name();
        for (int y = 0; y < G.order(); ++y) EXPECT_TRUE(s[i + 1].contains(G.commutator(x, y))) << G.name();
      }
      for (std::size_t j = 0; j + 1 < s.size(); ++j) {
        auto target = term(i + j + 1);
        for (int x : s[i].elements()) {
          for (int y : s[j].elements()) ASSERT_TRUE(target.contains(G.commutator(x, y))) << G.name();
          int pj = 1;
          for (std::size_t r = 0; r <= j; ++r) pj *= p;
          ASSERT_TRUE(target.contains(G.power(x, pj))) << G.name();
        }
      }
    }
  }
}

TEST(Frattini, ExamplesAndMaximals) {
  EXPECT_EQ(frattini(abelian({2, 2, 2}), 2).size(), 1);
  EXPECT_EQ(frattini(cyclic(4), 2).size(), 2);
  auto q8 = quaternion(8);
  EXPECT_EQ(frattini(q8, 2), center(q8));
  for (const auto& e : bundled_catalog("small"))
    EXPECT_EQ(frattini(e.group, e.p), frattini_by_maximals(e.group)) << e.group.name();
}

TEST(Frattini, MinGenerators) {
  EXPECT_EQ(min_generators(cyclic(8), 2), 1);
  EXPECT_EQ(min_generators(dihedral(8), 2), 2);
  EXPECT_EQ(min_generators(abelian({2, 2, 2, 2}), 2), 4);
  for (const auto& e : bundled_catalog("small")) {
    auto t = generating_tuple(e.group);
    EXPECT_EQ(static_cast<int>(t.size()), min_generators(e.group, e.p));
    EXPECT_EQ(generated(e.group, t).size(), e.group.order());
  }
}

TEST(Subgroups, Examples) {
  auto v4 = all_subgroups(abelian({2, 2}));
  EXPECT_EQ(v4.size(), 5u);
  EXPECT_EQ(normal_subgroups(abelian({2, 2})).size(), 5u);
  EXPECT_EQ(all_subgroups(quaternion(8)).size(), 6u);
  EXPECT_EQ(normal_subgroups(quaternion(8)).size(), 6u);
  auto d8 = dihedral(8);
  EXPECT_LT(normal_subgroups(d8).size(), all_subgroups(d8).size());
  EXPECT_THROW(all_subgroups(cyclic(256)), ResourceGuardError);
}

TEST(Subgroups, MatchesSubsetOracle) {
  std::vector<CayleyGroup> groups = catalog_groups("order8");
  for (auto& g : catalog_groups("order16")) groups.push_back(g);
  groups.push_back(cyclic(6));
  groups.push_back(abelian({3, 3}));
  for (const auto& G : groups) {
    auto oracle = subgroups_by_subsets(G);
    auto subs = all_subgroups(G);
    ASSERT_EQ(subs.size(), oracle.size()) << G.name();
    for (const auto& s : oracle)
      EXPECT_TRUE(std::any_of(subs.begin(), subs.end(), [&](const Subgroup& h) { return h.members == s; }));
    for (std::size_t i = 0; i < subs.size(); ++i) {
      bool conj_closed = true;
      for (int h : subs[i].elements())
        for (int g = 0; g < G.order(); ++g) conj_closed = conj_closed && subs[i].contains(G.conjugate(h, g));
      EXPECT_EQ(is_normal(G, subs[i]), conj_closed);
    }
  }
}

TEST(ProfileCounts, Examples) {
  EXPECT_EQ(normal_profile_count(abelian({2, 2, 2}), 2, {1}), 7);
  EXPECT_EQ(normal_profile_count(dihedral(8), 2, {0, 1}), 1);
  for (const auto& e : bundled_catalog("order16")) {
    std::vector<int> zeros(lower_p_length(e.group, e.p), 0);
    EXPECT_EQ(normal_profile_count(e.group, e.p, zeros), 1);
  }
  EXPECT_THROW(normal_profile_count(dihedral(8), 2, {1}), std::invalid_argument);
}

TEST(ProfileCounts, PartitionNormalSubgroups) {
  for (const auto& e : bundled_catalog("small")) {
    if (e.group.order() > 32) continue;
    std::map<std::vector<int>, int> by_profile;
    auto normals = normal_subgroups(e.group);
    for (const auto& U : normals) ++by_profile[normal_profile(e.group, e.p, U)];
    for (const auto& [u, c] : by_profile) EXPECT_EQ(normal_profile_count(e.group, e.p, u), c);
  }
}

TEST(Automorphisms, Examples) {
  EXPECT_EQ(aut_order(quaternion(8)), 24);
  EXPECT_EQ(aut_order(abelian({2, 2, 2})), 168);
  EXPECT_EQ(aut_order(cyclic(8)), 4);
  EXPECT_EQ(aut_group(quaternion(8)).size(), 24u);
  EXPECT_TRUE(aut_is_p_group(dihedral(8), 2));
  EXPECT_FALSE(aut_is_p_group(quaternion(8), 2));
  for (int p : {3, 5, 7}) EXPECT_FALSE(aut_is_p_group(cyclic(p), p));
  EXPECT_THROW(aut_group(abelian({2, 2, 2, 2, 2, 2, 2})), ResourceGuardError);
}

TEST(Automorphisms, MatchesPermutationOracle) {
  std::vector<CayleyGroup> groups = catalog_groups("order8");
  groups.push_back(cyclic(6));
  groups.push_back(abelian({2, 2}));
  groups.push_back(cyclic(7));
  for (const auto& G : groups) {
    long oracle = aut_by_permutations(G);
    EXPECT_EQ(aut_order(G), oracle) << G.name();
    EXPECT_EQ(static_cast<long>(aut_group(G).size()), oracle) << G.name();
  }
}

TEST(Automorphisms, StabilizerChainMatchesEnumeration) {
  for (const auto& id : {"order16", "order27"})
    for (const auto& e : bundled_catalog(id)) {
      long count = 0;
      for_each_automorphism(e.group, [&](const Automorphism&) {
        ++count;
        return true;
      });
      EXPECT_EQ(aut_order(e.group), count) << e.group.name();
    }
}

TEST(Automorphisms, CoprimeProducts) {
  std::vector<std::pair<CayleyGroup, CayleyGroup>> cases{
      {cyclic(4), cyclic(3)}, {abelian({2, 2}), cyclic(3)}, {quaternion(8), cyclic(3)},
      {dihedral(8), abelian({3, 3})}, {abelian({2, 2}), cyclic(5)}, {dihedral(8), cyclic(5)}};
  for (const auto& [a, b] : cases)
    EXPECT_EQ(aut_order(direct_product(a, b)), aut_order(a) * aut_order(b)) << a.name() << " x " << b.name();
}

TEST(Automorphisms, FrattiniKernelIsPGroup) {
  std::vector<Catalog> catalogs{bundled_catalog("small"), bundled_catalog("order125")};
  catalogs[1].push_back({wreath_cp_cp(3), 3});
  for (const auto& catalog : catalogs)
    for (const auto& e : catalog) {
      const auto& G = e.group;
      auto phi = frattini(G, e.p);
      auto gens = generating_tuple(G);
      ExactInt kernel = 0;
      for_each_automorphism(G, [&](const Automorphism& a) {
        bool trivial_on_quotient = true;
        for (int g : gens) trivial_on_quotient = trivial_on_quotient && phi.contains(G.mul(G.inv(g), a[g]));
        if (trivial_on_quotient) kernel += 1;
        return true;
      });
      EXPECT_GE(prime_power_exponent(kernel, e.p), 0) << G.name() << " kernel " << kernel;
    }
}

TEST(ClosedForms, AbelianExamples) {
  EXPECT_EQ(macdonald_aut_order(qcombin::Partition{1, 1}, 2), 6);
  EXPECT_EQ(macdonald_aut_order(qcombin::Partition{1}, 5), 4);
  EXPECT_EQ(macdonald_aut_order(qcombin::Partition{2, 1}, 2), 8);
  EXPECT_EQ(aut_order(abelian({4, 2})), 8);
}

TEST(ClosedForms, AbelianMatchesBruteForce) {
  for (int p : {2, 3, 5, 7}) {
    int pk = p;
    for (int k = 1; pk <= 64; ++k, pk *= p)
      for (const auto& lambda : qcombin::partitions_of(k))
        EXPECT_EQ(macdonald_aut_order(lambda, p), aut_order(abelian_of_type(lambda, p)))
            << lambda.to_string() << " p=" << p;
  }
}

TEST(ClosedForms, ExtraspecialValues) {
  using V = ExtraspecialVariant;
  EXPECT_EQ(winter_aut_order(3, 1, V::exponent_p), 432);
  EXPECT_EQ(winter_aut_order(3, 1, V::exponent_p2), 54);
  EXPECT_EQ(winter_aut_order(2, 1, V::plus_type), 8);
  EXPECT_EQ(winter_aut_order(2, 1, V::minus_type), 24);
  EXPECT_EQ(winter_aut_order(2, 2, V::plus_type), 1152);
  EXPECT_EQ(winter_aut_order(2, 2, V::minus_type), 1920);
  EXPECT_THROW(winter_aut_order(2, 1, V::exponent_p), std::invalid_argument);
  EXPECT_THROW(winter_aut_order(3, 1, V::plus_type), std::invalid_argument);
}

TEST(ClosedForms, ExtraspecialMatchesBruteForce) {
  using V = ExtraspecialVariant;
  auto d8 = dihedral(8), q8 = quaternion(8);
  EXPECT_EQ(aut_order(extraspecial(3, true)), winter_aut_order(3, 1, V::exponent_p));
  EXPECT_EQ(aut_order(extraspecial(3, false)), winter_aut_order(3, 1, V::exponent_p2));
  EXPECT_EQ(aut_order(extraspecial(5, true)), winter_aut_order(5, 1, V::exponent_p));
  EXPECT_EQ(aut_order(extraspecial(5, false)), winter_aut_order(5, 1, V::exponent_p2));
  EXPECT_EQ(aut_order(d8), winter_aut_order(2, 1, V::plus_type));
  EXPECT_EQ(aut_order(q8), winter_aut_order(2, 1, V::minus_type));
  EXPECT_EQ(aut_order(central_product(d8, 2, d8, 2)), winter_aut_order(2, 2, V::plus_type));
  EXPECT_EQ(aut_order(central_product(q8, 2, q8, 2)), winter_aut_order(2, 2, V::plus_type));
  EXPECT_EQ(aut_order(central_product(d8, 2, q8, 2)), winter_aut_order(2, 2, V::minus_type));
}

TEST(ClosedForms, SylowFormulaComparison) {
  EXPECT_EQ(sylow_sym_aut_order(3, 1), 18);
  EXPECT_EQ(aut_order(cyclic(3)), 2);
  EXPECT_EQ(sylow_sym_aut_order(3, 2), 4 * 243);
  EXPECT_EQ(sylow_sym_aut_order(5, 1), 4 * 625);
  auto wreath = wreath_cp_cp(3);
  auto brute = aut_order(wreath);
  EXPECT_EQ(ExactInt(aut_group(wreath).size()), brute);
  RecordProperty("aut_c3_wr_c3", brute.str());
  EXPECT_THROW(sylow_sym_aut_order(2, 2), std::invalid_argument);
}

TEST(Census, TableRows) {
  auto check = [](int p, int k, int aut_p, int total) {
    auto r = census(p, k);
    EXPECT_EQ(r.aut_p_groups, aut_p) << p << "^" << k;
    EXPECT_EQ(r.total, total) << p << "^" << k;
  };
  check(2, 3, 3, 5);
  check(3, 3, 0, 5);
  check(5, 3, 0, 5);
  check(2, 4, 9, 14);
  EXPECT_THROW(census(3, 4), std::invalid_argument);
}

TEST(Census, KnownOrdersOfEight) {
  std::map<std::string, ExactInt> expected{{"C8", 4}, {"C4xC2", 8}, {"C2^3", 168}, {"D8", 8}, {"Q8", 24}};
  auto r = census(2, 3);
  for (const auto& [name, order] : r.aut_orders) EXPECT_EQ(expected.at(name), order) << name;
}

TEST(Catalog, CompletenessFixtures) {
  for (const auto& [id, count, order] : {std::tuple{"order8", 5, 8}, std::tuple{"order16", 14, 16},
                                         std::tuple{"order27", 5, 27}, std::tuple{"order125", 5, 125}}) {
    auto catalog = bundled_catalog(id);
    ASSERT_EQ(static_cast<int>(catalog.size()), count) << id;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      EXPECT_EQ(catalog[i].group.order(), order);
      for (std::size_t j = i + 1; j < catalog.size(); ++j) {
        const auto& a = catalog[i].group;
        const auto& b = catalog[j].group;
        if (fingerprint(a) == fingerprint(b))
          EXPECT_FALSE(find_isomorphism(a, b).has_value()) << a.name() << " ~ " << b.name();
      }
    }
  }
}

TEST(Catalog, IsomorphismSearch) {
  auto a = central_product(dihedral(8), 2, dihedral(8), 2);
  auto b = central_product(quaternion(8), 2, quaternion(8), 2);
  auto iso = find_isomorphism(a, b);
  ASSERT_TRUE(iso.has_value());
  for (int x = 0; x < a.order(); ++x)
    for (int y = 0; y < a.order(); ++y) ASSERT_EQ((*iso)[a.mul(x, y)], b.mul((*iso)[x], (*iso)[y]));
  EXPECT_FALSE(find_isomorphism(dihedral(8), quaternion(8)).has_value());
  EXPECT_TRUE(find_isomorphism(extraspecial(3, true), unitriangular(3, 3)).has_value());
}

TEST(Catalog, FileRoundTrip) {
  auto catalog = bundled_catalog("order8");
  std::stringstream buffer;
  write_catalog(buffer, catalog);
  auto back = read_catalog(buffer);
  ASSERT_EQ(back.size(), catalog.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].group.name(), catalog[i].group.name());
    EXPECT_EQ(back[i].group.table(), catalog[i].group.table());
    EXPECT_EQ(back[i].group.generators(), catalog[i].group.generators());
    EXPECT_EQ(back[i].p, catalog[i].p);
  }
  std::istringstream bad_row("group X order 2 prime 2\n0 1\n1\ngenerators 1\n");
  EXPECT_THROW(read_catalog(bad_row), std::invalid_argument);
  std::istringstream wrong_prime("group X order 2 prime 3\n0 1\n1 0\ngenerators 1\n");
  EXPECT_THROW(read_catalog(wrong_prime), std::invalid_argument);
  std::istringstream bad_header("grp X order 2 prime 2\n");
  EXPECT_THROW(read_catalog(bad_header), std::invalid_argument);
}
