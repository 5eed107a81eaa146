#pragma once

#include "pgrouplab/exact.hpp"
#include "pgrouplab/fplin.hpp"
#include "pgrouplab/qcombin.hpp"

#include <bitset>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pgl::groups {

inline constexpr int kMaxOrder = 256;
using ElementSet = std::bitset<kMaxOrder>;

// Finite group given by its full multiplication table; element 0 is the identity.
class CayleyGroup {
 public:
  CayleyGroup(std::string name, int order, std::vector<std::uint16_t> table, std::vector<int> generators = {},
              std::vector<std::string> labels = {});

  const std::string& name() const { return name_; }
  int order() const { return order_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  int identity() const { return 0; }
  int power(int a, long long k) const;
  int commutator(int a, int b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  int conjugate(int a, int by) const { return mul(mul(inv(by), a), by); }
  int element_order(int a) const { return orders_[a]; }
  int exponent() const;
  bool is_abelian() const;
  const std::vector<int>& generators() const { return generators_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::uint16_t>& table() const { return table_; }

 private:
  std::string name_;
  int order_;
  std::vector<std::uint16_t> table_;
  std::vector<int> inverse_, orders_, generators_;
  std::vector<std::string> labels_;
};

struct Subgroup {
  ElementSet members;
  int size() const { return static_cast<int>(members.count()); }
  bool contains(int x) const { return members.test(static_cast<std::size_t>(x)); }
  std::vector<int> elements() const;
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members == b.members; }
};

Subgroup generated(const CayleyGroup& G, const std::vector<int>& gens);
Subgroup generated(const CayleyGroup& G, const ElementSet& gens);
Subgroup whole(const CayleyGroup& G);
Subgroup trivial(const CayleyGroup& G);
Subgroup intersection(const Subgroup& a, const Subgroup& b);
// Product AB of two subgroups, one of which normalizes the other.
Subgroup product(const CayleyGroup& G, const Subgroup& a, const Subgroup& b);
Subgroup center(const CayleyGroup& G);
Subgroup derived_subgroup(const CayleyGroup& G);
bool is_normal(const CayleyGroup& G, const Subgroup& H);
bool is_p_group(const CayleyGroup& G, int p);

// Builders. Every builder enforces |G| <= 256.
CayleyGroup from_elements(std::string name, int order, const std::function<int(int, int)>& mul,
                          std::vector<int> generators = {}, std::vector<std::string> labels = {});
CayleyGroup cyclic(int n);
CayleyGroup abelian(const std::vector<int>& cyclic_orders, std::string name = "");
CayleyGroup abelian_of_type(const qcombin::Partition& lambda, int p);
// <a, b | a^m, b^n = a^t, b a b^-1 = a^r>
CayleyGroup metacyclic(std::string name, int m, int n, int r, int t);
CayleyGroup dihedral(int order);
CayleyGroup quaternion(int order);
CayleyGroup semidihedral(int order);
// <a, b | a^{p^{n-1}}, b^p, b a b^-1 = a^{1 + p^{n-2}}>, order p^n, n >= 3.
CayleyGroup modular(int p, int n);
CayleyGroup unitriangular(int n, int p);
CayleyGroup matrix_group(std::string name, const std::vector<fplin::FpMat>& gens);
CayleyGroup direct_product(const CayleyGroup& a, const CayleyGroup& b);
CayleyGroup quotient(const CayleyGroup& G, const Subgroup& N, std::string name = "");
// (A x B) / <(za, zb^-1)> for central elements of equal order.
CayleyGroup central_product(const CayleyGroup& a, int za, const CayleyGroup& b, int zb, std::string name = "");
// N x| H where action(h) is the permutation of N's elements induced by h.
CayleyGroup semidirect(const CayleyGroup& n, const CayleyGroup& h, const std::function<std::vector<int>(int)>& action,
                       std::string name);
// Extraspecial group of order p^3 for odd p, exponent p or p^2.
CayleyGroup extraspecial(int p, bool exponent_p);
CayleyGroup wreath_cp_cp(int p);

// Lower p-series G_1 = G > G_2 > ... > G_{n+1} = 1 (the trivial term included).
std::vector<Subgroup> lower_p_series(const CayleyGroup& G, int p);
int lower_p_length(const CayleyGroup& G, int p);
Subgroup frattini(const CayleyGroup& G, int p);
Subgroup frattini_by_maximals(const CayleyGroup& G, const Limits& limits = {});
int min_generators(const CayleyGroup& G, int p);
// Lift of a basis of G / Phi(G); for non-p-groups a greedy generating set.
std::vector<int> generating_tuple(const CayleyGroup& G);

std::vector<Subgroup> all_subgroups(const CayleyGroup& G, const Limits& limits = {});
std::vector<Subgroup> normal_subgroups(const CayleyGroup& G, const Limits& limits = {});
// log_p(|U cap G_i| / |U cap G_{i+1}|) for i = 1..n.
std::vector<int> normal_profile(const CayleyGroup& G, int p, const Subgroup& U);
ExactInt normal_profile_count(const CayleyGroup& G, int p, const std::vector<int>& u, const Limits& limits = {});

using Automorphism = std::vector<int>;  // image of each element

// Visits automorphisms in lexicographic order of generator images; visit returns false to stop.
void for_each_automorphism(const CayleyGroup& G, const std::function<bool(const Automorphism&)>& visit,
                           const Limits& limits = {});
std::vector<Automorphism> aut_group(const CayleyGroup& G, const Limits& limits = {});
// Counted through a stabilizer chain on the generating tuple.
ExactInt aut_order(const CayleyGroup& G, const Limits& limits = {});
bool aut_is_p_group(const CayleyGroup& G, int p, const Limits& limits = {});
bool is_automorphism(const CayleyGroup& G, const Automorphism& phi);
std::optional<std::vector<int>> find_isomorphism(const CayleyGroup& G, const CayleyGroup& H);

ExactInt macdonald_aut_order(const qcombin::Partition& lambda, int p);

enum class ExtraspecialVariant { exponent_p, exponent_p2, plus_type, minus_type };
// |Aut| of the extraspecial group of order p^{1+2n}.
ExactInt winter_aut_order(int p, int n, ExtraspecialVariant variant);
// (p-1)^m p^{n(m)}, formula evaluated as written.
ExactInt sylow_sym_aut_order(int p, int m);

struct Fingerprint {
  std::vector<int> order_profile;  // number of elements of each order, by order
  int center_order = 0;
  int derived_order = 0;
  int exponent = 0;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};
Fingerprint fingerprint(const CayleyGroup& G);

struct CatalogEntry {
  CayleyGroup group;
  int p;
};
using Catalog = std::vector<CatalogEntry>;

// Bundled catalogs: "order8", "order16", "order27", "order125" and "small" (orders <= 64).
Catalog bundled_catalog(const std::string& id);
std::vector<std::string> bundled_catalog_ids();

struct CensusResult {
  int aut_p_groups = 0;
  int total = 0;
  std::vector<std::pair<std::string, ExactInt>> aut_orders;
};
CensusResult census(int p, int k, const Limits& limits = {});
CensusResult census(const Catalog& catalog, const Limits& limits = {});

void write_catalog(std::ostream& os, const Catalog& catalog);
Catalog read_catalog(std::istream& is);

}  // namespace pgl::groups
