#include "pgrouplab/groups.hpp"

#include "pgrouplab/parallel.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace pgl::groups {

namespace {

void check_order(int order) {
  if (order < 1) throw std::invalid_argument("group order must be positive");
  if (order > kMaxOrder) throw ResourceGuardError("resource guard: group order exceeds 256");
}

}  // namespace

CayleyGroup::CayleyGroup(std::string name, int order, std::vector<std::uint16_t> table, std::vector<int> generators,
                         std::vector<std::string> labels)
    : name_(std::move(name)), order_(order), table_(std::move(table)), generators_(std::move(generators)),
      labels_(std::move(labels)) {
  check_order(order);
  const std::size_t n = static_cast<std::size_t>(order);
  if (table_.size() != n * n) throw std::invalid_argument("CayleyGroup: table size does not match order");
  if (!labels_.empty() && labels_.size() != n) throw std::invalid_argument("CayleyGroup: label count mismatch");
  for (int g : generators_)
    if (g < 0 || g >= order) throw std::invalid_argument("CayleyGroup: generator index out of range");
  for (auto v : table_)
    if (v >= order) throw std::invalid_argument("CayleyGroup: table entry out of range");
  for (int a = 0; a < order; ++a)
    if (mul(0, a) != a || mul(a, 0) != a) throw std::invalid_argument("CayleyGroup: element 0 is not the identity");
  for (int a = 0; a < order; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int b = 0; b < order; ++b) {
      if (row[mul(a, b)]++ || col[mul(b, a)]++) throw std::invalid_argument("CayleyGroup: table is not a Latin square");
    }
  }
  // Light's test needs only a generating set for the third argument.
  std::vector<int> third;
  bool use_generators = order > 64 && !generators_.empty();
  if (use_generators) {
    std::vector<char> seen(n, 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (int g : generators_) {
        int y = mul(queue[i], g);
        if (!seen[y]) seen[y] = 1, queue.push_back(y);
      }
    use_generators = static_cast<int>(queue.size()) == order;
  }
  if (use_generators) {
    third = generators_;
  } else {
    third.resize(n);
    std::iota(third.begin(), third.end(), 0);
  }
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      int ab = mul(a, b);
      for (int c : third)
        if (mul(ab, c) != mul(a, mul(b, c))) throw std::invalid_argument("CayleyGroup: table is not associative");
    }
  inverse_.assign(n, 0);
  orders_.assign(n, 0);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b)
      if (mul(a, b) == 0) inverse_[a] = b;
    int k = 1;
    for (int x = a; x != 0; x = mul(x, a)) ++k;
    orders_[a] = a == 0 ? 1 : k;
  }
  if (generators_.empty()) generators_ = generating_tuple(*this);
}

int CayleyGroup::power(int a, long long k) const {
  k %= orders_[a];
  if (k < 0) k += orders_[a];
  int r = 0;
  for (long long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

int CayleyGroup::exponent() const {
  int e = 1;
  for (int o : orders_) e = std::lcm(e, o);
  return e;
}

bool CayleyGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<int> Subgroup::elements() const {
  std::vector<int> out;
  for (int i = 0; i < kMaxOrder; ++i)
    if (members.test(static_cast<std::size_t>(i))) out.push_back(i);
  return out;
}

Subgroup generated(const CayleyGroup& G, const std::vector<int>& gens) {
  Subgroup H;
  H.members.set(0);
  std::vector<int> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (int g : gens) {
      int y = G.mul(queue[i], g);
      if (!H.members.test(static_cast<std::size_t>(y))) {
        H.members.set(static_cast<std::size_t>(y));
        queue.push_back(y);
      }
    }
  return H;
}

Subgroup generated(const CayleyGroup& G, const ElementSet& gens) {
  std::vector<int> list;
  for (int i = 0; i < G.order(); ++i)
    if (gens.test(static_cast<std::size_t>(i))) list.push_back(i);
  return generated(G, list);
}

Subgroup whole(const CayleyGroup& G) {
  Subgroup H;
  for (int i = 0; i < G.order(); ++i) H.members.set(static_cast<std::size_t>(i));
  return H;
}

Subgroup trivial(const CayleyGroup&) {
  Subgroup H;
  H.members.set(0);
  return H;
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) { return {a.members & b.members}; }

Subgroup product(const CayleyGroup& G, const Subgroup& a, const Subgroup& b) {
  Subgroup r;
  auto ea = a.elements(), eb = b.elements();
  for (int x : ea)
    for (int y : eb) r.members.set(static_cast<std::size_t>(G.mul(x, y)));
  return r;
}

Subgroup center(const CayleyGroup& G) {
  Subgroup Z;
  for (int a = 0; a < G.order(); ++a) {
    bool central = true;
    for (int g : G.generators()) central = central && G.mul(a, g) == G.mul(g, a);
    if (central) Z.members.set(static_cast<std::size_t>(a));
  }
  return Z;
}

Subgroup derived_subgroup(const CayleyGroup& G) {
  ElementSet comms;
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b) comms.set(static_cast<std::size_t>(G.commutator(a, b)));
  return generated(G, comms);
}

bool is_normal(const CayleyGroup& G, const Subgroup& H) {
  for (int h : H.elements())
    for (int g : G.generators())
      if (!H.contains(G.conjugate(h, g))) return false;
  return true;
}

bool is_p_group(const CayleyGroup& G, int p) {
  return is_prime(p) && prime_power_exponent(ExactInt(G.order()), p) >= 0;
}

CayleyGroup from_elements(std::string name, int order, const std::function<int(int, int)>& mul,
                          std::vector<int> generators, std::vector<std::string> labels) {
  check_order(order);
  std::vector<std::uint16_t> table(static_cast<std::size_t>(order) * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      int c = mul(a, b);
      if (c < 0 || c >= order) throw std::logic_error("from_elements: product outside the element range");
      table[static_cast<std::size_t>(a) * order + b] = static_cast<std::uint16_t>(c);
    }
  return CayleyGroup(std::move(name), order, std::move(table), std::move(generators), std::move(labels));
}

CayleyGroup cyclic(int n) {
  check_order(n);
  return from_elements("C" + std::to_string(n), n, [n](int a, int b) { return (a + b) % n; }, n > 1 ? std::vector<int>{1} : std::vector<int>{});
}

CayleyGroup abelian(const std::vector<int>& cyclic_orders, std::string name) {
  int order = 1;
  for (int m : cyclic_orders) {
    if (m < 1) throw std::invalid_argument("abelian: cyclic orders must be positive");
    order *= m;
    check_order(order);
  }
  if (name.empty()) {
    for (std::size_t i = 0; i < cyclic_orders.size(); ++i) name += (i ? "x" : "") + ("C" + std::to_string(cyclic_orders[i]));
    if (name.empty()) name = "C1";
  }
  std::vector<int> gens;
  int scale = 1;
  for (int m : cyclic_orders) {
    if (m > 1) gens.push_back(scale);
    scale *= m;
  }
  auto mods = cyclic_orders;
  return from_elements(std::move(name), order, [mods](int a, int b) {
    int r = 0, scale = 1;
    for (int m : mods) {
      r += ((a % m + b % m) % m) * scale;
      a /= m;
      b /= m;
      scale *= m;
    }
    return r;
  }, gens);
}

CayleyGroup abelian_of_type(const qcombin::Partition& lambda, int p) {
  if (!is_prime(p)) throw std::invalid_argument("abelian_of_type: p must be prime");
  std::vector<int> orders;
  for (int l : lambda.parts()) {
    int m = 1;
    for (int i = 0; i < l; ++i) {
      m *= p;
      check_order(m);
    }
    orders.push_back(m);
  }
  return abelian(orders);
}

CayleyGroup metacyclic(std::string name, int m, int n, int r, int t) {
  if (m < 1 || n < 1) throw std::invalid_argument("metacyclic: orders must be positive");
  check_order(m * n);
  long long rn = 1;
  for (int i = 0; i < n; ++i) rn = rn * r % m;
  if (rn % m != 1 % m || (static_cast<long long>(t) * (r - 1)) % m != 0)
    throw std::invalid_argument("metacyclic: parameters do not define a group of order m n");
  std::vector<int> rpow(n, 1 % m);
  for (int j = 1; j < n; ++j) rpow[j] = static_cast<int>(static_cast<long long>(rpow[j - 1]) * r % m);
  // a^i b^j has index j m + i.
  auto mul = [m, n, t, rpow](int x, int y) {
    int i = x % m, j = x / m, k = y % m, l = y / m;
    long long e = i + static_cast<long long>(k) * rpow[j];
    int s = j + l;
    if (s >= n) {
      s -= n;
      e += t;
    }
    return s * m + static_cast<int>(((e % m) + m) % m);
  };
  std::vector<int> gens;
  if (m > 1) gens.push_back(1);
  if (n > 1) gens.push_back(m);
  return from_elements(std::move(name), m * n, mul, gens);
}

CayleyGroup dihedral(int order) {
  if (order < 4 || order % 2) throw std::invalid_argument("dihedral: order must be even and at least 4");
  return metacyclic("D" + std::to_string(order), order / 2, 2, order / 2 - 1, 0);
}

CayleyGroup quaternion(int order) {
  if (order < 8 || prime_power_exponent(ExactInt(order), 2) < 3)
    throw std::invalid_argument("quaternion: order must be a power of 2, at least 8");
  int m = order / 2;
  return metacyclic("Q" + std::to_string(order), m, 2, m - 1, m / 2);
}

CayleyGroup semidihedral(int order) {
  if (order < 16 || prime_power_exponent(ExactInt(order), 2) < 4)
    throw std::invalid_argument("semidihedral: order must be a power of 2, at least 16");
  int m = order / 2;
  return metacyclic("SD" + std::to_string(order), m, 2, m / 2 - 1, 0);
}

CayleyGroup modular(int p, int n) {
  if (!is_prime(p) || n < 3) throw std::invalid_argument("modular: need prime p and n >= 3");
  int m = 1;
  for (int i = 0; i < n - 1; ++i) m *= p;
  check_order(m * p);
  return metacyclic("M" + std::to_string(m * p), m, p, 1 + m / p, 0);
}

CayleyGroup matrix_group(std::string name, const std::vector<fplin::FpMat>& gens) {
  if (gens.empty()) throw std::invalid_argument("matrix_group: no generators");
  int d = gens[0].rows(), p = gens[0].modulus();
  std::vector<fplin::FpMat> elems{fplin::FpMat::identity(d, p)};
  std::map<std::vector<int>, int> index{{elems[0].entries(), 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      auto y = elems[i] * g;
      if (index.emplace(y.entries(), static_cast<int>(elems.size())).second) {
        elems.push_back(y);
        check_order(static_cast<int>(elems.size()));
      }
    }
  std::vector<int> gen_idx;
  for (const auto& g : gens) gen_idx.push_back(index.at(g.entries()));
  int order = static_cast<int>(elems.size());
  std::vector<std::string> labels;
  for (const auto& e : elems) labels.push_back(e.to_string());
  return from_elements(std::move(name), order, [&](int a, int b) { return index.at((elems[a] * elems[b]).entries()); },
                       gen_idx, labels);
}

CayleyGroup unitriangular(int n, int p) {
  if (n < 2 || !is_prime(p)) throw std::invalid_argument("unitriangular: need n >= 2 and prime p");
  std::vector<fplin::FpMat> gens;
  for (int i = 0; i + 1 < n; ++i) {
    auto g = fplin::FpMat::identity(n, p);
    g.set(i, i + 1, 1);
    gens.push_back(g);
  }
  return matrix_group("UT(" + std::to_string(n) + "," + std::to_string(p) + ")", gens);
}

CayleyGroup direct_product(const CayleyGroup& a, const CayleyGroup& b) {
  int na = a.order(), nb = b.order();
  check_order(na * nb);
  std::vector<int> gens;
  for (int g : a.generators()) gens.push_back(g * nb);
  for (int g : b.generators()) gens.push_back(g);
  return from_elements(a.name() + "x" + b.name(), na * nb, [&](int x, int y) {
    return a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  }, gens);
}

CayleyGroup quotient(const CayleyGroup& G, const Subgroup& N, std::string name) {
  if (!N.contains(0) || !is_normal(G, N) || generated(G, N.elements()) != N)
    throw std::invalid_argument("quotient: subgroup is not normal");
  std::vector<int> coset_of(G.order(), -1);
  std::vector<int> reps;
  auto nel = N.elements();
  for (int x = 0; x < G.order(); ++x) {
    if (coset_of[x] >= 0) continue;
    for (int h : nel) coset_of[G.mul(x, h)] = static_cast<int>(reps.size());
    reps.push_back(x);
  }
  std::set<int> gen_set;
  for (int g : G.generators())
    if (coset_of[g] != 0) gen_set.insert(coset_of[g]);
  if (name.empty()) name = G.name() + "/N";
  return from_elements(std::move(name), static_cast<int>(reps.size()),
                       [&](int a, int b) { return coset_of[G.mul(reps[a], reps[b])]; },
                       std::vector<int>(gen_set.begin(), gen_set.end()));
}

CayleyGroup central_product(const CayleyGroup& a, int za, const CayleyGroup& b, int zb, std::string name) {
  if (!center(a).contains(za) || !center(b).contains(zb) || a.element_order(za) != b.element_order(zb))
    throw std::invalid_argument("central_product: elements must be central of equal order");
  auto D = direct_product(a, b);
  int z = za * b.order() + b.inv(zb);
  if (name.empty()) name = a.name() + "o" + b.name();
  return quotient(D, generated(D, std::vector<int>{z}), std::move(name));
}

CayleyGroup semidirect(const CayleyGroup& n, const CayleyGroup& h, const std::function<std::vector<int>(int)>& action,
                       std::string name) {
  int nn = n.order(), nh = h.order();
  check_order(nn * nh);
  std::vector<std::vector<int>> act(nh);
  for (int x = 0; x < nh; ++x) {
    act[x] = action(x);
    if (static_cast<int>(act[x].size()) != nn) throw std::invalid_argument("semidirect: action has wrong size");
  }
  std::vector<int> gens;
  for (int g : n.generators()) gens.push_back(g * nh);
  for (int g : h.generators()) gens.push_back(g);
  // (n1, h1)(n2, h2) = (n1 * h1(n2), h1 h2), index n * |H| + h.
  return from_elements(std::move(name), nn * nh, [&](int x, int y) {
    int n1 = x / nh, h1 = x % nh, n2 = y / nh, h2 = y % nh;
    return n.mul(n1, act[h1][n2]) * nh + h.mul(h1, h2);
  }, gens);
}

CayleyGroup extraspecial(int p, bool exponent_p) {
  if (!is_prime(p) || p == 2) throw std::invalid_argument("extraspecial: p must be an odd prime");
  auto G = exponent_p ? unitriangular(3, p) : modular(p, 3);
  std::string name = std::to_string(p * p * p) + (exponent_p ? "+" : "-");
  return CayleyGroup(name, G.order(), G.table(), G.generators(), G.labels());
}

CayleyGroup wreath_cp_cp(int p) {
  if (!is_prime(p)) throw std::invalid_argument("wreath_cp_cp: p must be prime");
  auto base = abelian(std::vector<int>(p, p));
  auto top = cyclic(p);
  int nn = base.order();
  return semidirect(base, top, [&](int h) {
    std::vector<int> perm(nn);
    for (int x = 0; x < nn; ++x) {
      std::vector<int> digits(p);
      for (int i = 0, c = x; i < p; ++i, c /= p) digits[i] = c % p;
      int y = 0;
      for (int i = p - 1; i >= 0; --i) y = y * p + digits[((i - h) % p + p) % p];
      perm[x] = y;
    }
    return perm;
  }, "C" + std::to_string(p) + "wrC" + std::to_string(p));
}

namespace {

void require_p_group(const CayleyGroup& G, int p) {
  if (!is_p_group(G, p)) throw std::invalid_argument(G.name() + " is not a " + std::to_string(p) + "-group");
}

Subgroup next_p_term(const CayleyGroup& G, int p, const Subgroup& Gi) {
  ElementSet gens;
  auto el = Gi.elements();
  for (int x : el) gens.set(static_cast<std::size_t>(G.power(x, p)));
  for (int x : el)
    for (int y = 0; y < G.order(); ++y) gens.set(static_cast<std::size_t>(G.commutator(x, y)));
  return generated(G, gens);
}

}  // namespace

std::vector<Subgroup> lower_p_series(const CayleyGroup& G, int p) {
  require_p_group(G, p);
  std::vector<Subgroup> series{whole(G)};
  while (series.back().size() > 1) series.push_back(next_p_term(G, p, series.back()));
  return series;
}

int lower_p_length(const CayleyGroup& G, int p) { return static_cast<int>(lower_p_series(G, p).size()) - 1; }

Subgroup frattini(const CayleyGroup& G, int p) {
  require_p_group(G, p);
  return G.order() == 1 ? whole(G) : next_p_term(G, p, whole(G));
}

Subgroup frattini_by_maximals(const CayleyGroup& G, const Limits& limits) {
  auto subs = all_subgroups(G, limits);
  Subgroup result = whole(G);
  for (const auto& H : subs) {
    if (H.size() == G.order()) continue;
    bool maximal = true;
    for (const auto& K : subs)
      if (K.size() > H.size() && K.size() < G.order() && (H.members & ~K.members).none()) maximal = false;
    if (maximal) result = intersection(result, H);
  }
  return result;
}

int min_generators(const CayleyGroup& G, int p) {
  int k = prime_power_exponent(ExactInt(G.order() / frattini(G, p).size()), p);
  if (k < 0) throw std::logic_error("min_generators: index of the Frattini subgroup is not a power of p");
  return k;
}

std::vector<int> generating_tuple(const CayleyGroup& G) {
  std::vector<int> chosen;
  int n = G.order();
  if (n == 1) return chosen;
  int p = 2;
  while (n % p) ++p;
  bool pgroup = prime_power_exponent(ExactInt(n), p) >= 0;
  Subgroup base = trivial(G);
  if (pgroup) {
    ElementSet gens;
    for (int x = 0; x < n; ++x) gens.set(static_cast<std::size_t>(G.power(x, p)));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) gens.set(static_cast<std::size_t>(G.commutator(x, y)));
    base = generated(G, gens);
  }
  Subgroup cur = base;
  while (cur.size() < n) {
    int pick = -1;
    if (pgroup) {
      for (int x = 1; x < n && pick < 0; ++x)
        if (!cur.contains(x)) pick = x;
    } else {
      for (int x = 1; x < n; ++x)
        if (!cur.contains(x) && (pick < 0 || G.element_order(x) > G.element_order(pick))) pick = x;
    }
    chosen.push_back(pick);
    auto gens = base.elements();
    gens.insert(gens.end(), chosen.begin(), chosen.end());
    cur = generated(G, gens);
  }
  return chosen;
}

namespace {

bool set_less(const Subgroup& a, const Subgroup& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (int i = 0; i < kMaxOrder; ++i) {
    bool x = a.contains(i), y = b.contains(i);
    if (x != y) return x;
  }
  return false;
}

struct SetHash {
  std::size_t operator()(const ElementSet& s) const { return std::hash<ElementSet>()(s); }
};

}  // namespace

std::vector<Subgroup> all_subgroups(const CayleyGroup& G, const Limits& limits) {
  enforce_guard(G.order() <= 128, limits, "subgroup enumeration requires |G| <= 128");
  std::vector<Subgroup> cyclics;
  std::vector<int> cyclic_gen;
  std::unordered_map<ElementSet, std::size_t, SetHash> seen;
  std::vector<Subgroup> out;
  std::vector<std::vector<int>> out_gens;
  for (int x = 0; x < G.order(); ++x) {
    auto C = generated(G, std::vector<int>{x});
    if (seen.emplace(C.members, out.size()).second) {
      out.push_back(C);
      out_gens.push_back(x ? std::vector<int>{x} : std::vector<int>{});
      cyclics.push_back(C);
      cyclic_gen.push_back(x);
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t c = 0; c < cyclics.size(); ++c) {
      if ((cyclics[c].members & ~out[i].members).none()) continue;
      auto gens = out_gens[i];
      gens.push_back(cyclic_gen[c]);
      auto J = generated(G, gens);
      if (seen.emplace(J.members, out.size()).second) {
        enforce_guard(out.size() < 2000000, limits, "more than 2*10^6 subgroups");
        out.push_back(J);
        out_gens.push_back(gens);
      }
    }
  std::sort(out.begin(), out.end(), set_less);
  return out;
}

std::vector<Subgroup> normal_subgroups(const CayleyGroup& G, const Limits& limits) {
  std::vector<Subgroup> out;
  for (auto& H : all_subgroups(G, limits))
    if (is_normal(G, H)) out.push_back(H);
  return out;
}

std::vector<int> normal_profile(const CayleyGroup& G, int p, const Subgroup& U) {
  auto series = lower_p_series(G, p);
  std::vector<int> u;
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    int a = intersection(U, series[i]).size(), b = intersection(U, series[i + 1]).size();
    u.push_back(prime_power_exponent(ExactInt(a / b), p));
  }
  return u;
}

ExactInt normal_profile_count(const CayleyGroup& G, int p, const std::vector<int>& u, const Limits& limits) {
  if (static_cast<int>(u.size()) != lower_p_length(G, p))
    throw std::invalid_argument("normal_profile_count: profile length differs from the lower p-length");
  ExactInt count = 0;
  for (const auto& U : normal_subgroups(G, limits))
    if (normal_profile(G, p, U) == u) count += 1;
  return count;
}

namespace {

// Partial homomorphism G -> H defined on <g_1..g_k> by the chosen images.
class Extender {
 public:
  Extender(const CayleyGroup& G, const CayleyGroup& H) : G_(G), H_(H), gens_(generating_tuple(G)) {
    for (int g : gens_) {
      std::vector<int> cands;
      for (int h = 0; h < H.order(); ++h)
        if (H.element_order(h) == G.element_order(g)) cands.push_back(h);
      candidates_.push_back(std::move(cands));
    }
  }

  int depth() const { return static_cast<int>(gens_.size()); }
  const std::vector<int>& candidates(int level) const { return candidates_[level]; }

  // Breadth-first closure over the Cayley graph; fails on a conflicting or repeated image.
  bool extend(const std::vector<int>& images, int k, std::vector<int>& phi) const {
    phi.assign(G_.order(), -1);
    std::vector<char> used(H_.order(), 0);
    phi[0] = 0;
    used[0] = 1;
    std::vector<int> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int x = queue[q];
      for (int i = 0; i < k; ++i) {
        int y = G_.mul(x, gens_[i]), t = H_.mul(phi[x], images[i]);
        if (phi[y] < 0) {
          if (used[t]) return false;
          phi[y] = t;
          used[t] = 1;
          queue.push_back(y);
        } else if (phi[y] != t) {
          return false;
        }
      }
    }
    return true;
  }

  bool completes(std::vector<int>& images, int level, std::vector<int>& scratch) const {
    if (level == depth()) return true;
    for (int h : candidates_[level]) {
      images[level] = h;
      if (extend(images, level + 1, scratch) && completes(images, level + 1, scratch)) return true;
    }
    return false;
  }

  const std::vector<int>& gens() const { return gens_; }

 private:
  const CayleyGroup& G_;
  const CayleyGroup& H_;
  std::vector<int> gens_;
  std::vector<std::vector<int>> candidates_;
};

}  // namespace

void for_each_automorphism(const CayleyGroup& G, const std::function<bool(const Automorphism&)>& visit,
                           const Limits& limits) {
  Extender ext(G, G);
  enforce_guard(ipow(ExactInt(G.order()), static_cast<unsigned>(ext.depth())) <= 100000000, limits,
                "automorphism search requires |G|^d <= 10^8");
  std::vector<int> images(ext.depth(), 0), phi;
  bool stop = false;
  std::function<void(int)> rec = [&](int level) {
    if (level == ext.depth()) {
      ext.extend(images, level, phi);
      if (!visit(phi)) stop = true;
      return;
    }
    for (int h : ext.candidates(level)) {
      if (stop) return;
      images[level] = h;
      std::vector<int> partial;
      if (ext.extend(images, level + 1, partial)) rec(level + 1);
    }
  };
  rec(0);
}

std::vector<Automorphism> aut_group(const CayleyGroup& G, const Limits& limits) {
  std::vector<Automorphism> out;
  for_each_automorphism(G, [&](const Automorphism& a) {
    if (!is_automorphism(G, a)) throw std::logic_error("aut_group: search produced a non-automorphism");
    out.push_back(a);
    return true;
  }, limits);
  return out;
}

ExactInt aut_order(const CayleyGroup& G, const Limits&) {
  Extender ext(G, G);
  std::vector<int> images = ext.gens(), scratch;
  ExactInt total = 1;
  for (int level = 0; level < ext.depth(); ++level) {
    long long count = 0;
    for (int h : ext.candidates(level)) {
      images[level] = h;
      std::vector<int> trial = images;
      if (ext.extend(trial, level + 1, scratch) && ext.completes(trial, level + 1, scratch)) ++count;
    }
    images[level] = ext.gens()[level];
    total *= count;
  }
  return total;
}

bool aut_is_p_group(const CayleyGroup& G, int p, const Limits& limits) {
  return prime_power_exponent(aut_order(G, limits), p) >= 0;
}

bool is_automorphism(const CayleyGroup& G, const Automorphism& phi) {
  if (static_cast<int>(phi.size()) != G.order()) return false;
  std::vector<char> hit(G.order(), 0);
  for (int v : phi) {
    if (v < 0 || v >= G.order() || hit[v]) return false;
    hit[v] = 1;
  }
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b)
      if (phi[G.mul(a, b)] != G.mul(phi[a], phi[b])) return false;
  return true;
}

std::optional<std::vector<int>> find_isomorphism(const CayleyGroup& G, const CayleyGroup& H) {
  if (G.order() != H.order()) return std::nullopt;
  Extender ext(G, H);
  std::vector<int> images(ext.depth(), 0), phi;
  std::optional<std::vector<int>> found;
  std::function<bool(int)> rec = [&](int level) {
    if (level == ext.depth()) {
      ext.extend(images, level, phi);
      return true;
    }
    for (int h : ext.candidates(level)) {
      images[level] = h;
      std::vector<int> partial;
      if (ext.extend(images, level + 1, partial) && rec(level + 1)) return true;
    }
    return false;
  };
  if (rec(0)) found = phi;
  return found;
}

ExactInt macdonald_aut_order(const qcombin::Partition& lambda, int p) {
  if (!is_prime(p)) throw std::invalid_argument("macdonald_aut_order: p must be prime");
  auto conj = lambda.conjugate();
  long long n_lambda = 0;
  for (int c : conj.parts()) n_lambda += static_cast<long long>(c) * (c - 1) / 2;
  Rational value = Rational(ipow(ExactInt(p), static_cast<unsigned>(lambda.size() + 2 * n_lambda)));
  std::set<int> distinct(lambda.parts().begin(), lambda.parts().end());
  for (int part : distinct) {
    int m = lambda.multiplicity(part);
    for (int j = 1; j <= m; ++j) value *= 1 - Rational(1, ipow(ExactInt(p), static_cast<unsigned>(j)));
  }
  if (denominator(value) != 1) throw std::logic_error("macdonald_aut_order: non-integral value");
  return numerator(value);
}

ExactInt winter_aut_order(int p, int n, ExtraspecialVariant variant) {
  if (!is_prime(p) || n < 1) throw std::invalid_argument("winter_aut_order: need prime p and n >= 1");
  bool odd_variant = variant == ExtraspecialVariant::exponent_p || variant == ExtraspecialVariant::exponent_p2;
  if (odd_variant == (p == 2)) throw std::invalid_argument("winter_aut_order: variant does not match p");
  ExactInt P = p;
  ExactInt hi;  // |H / I|
  switch (variant) {
    case ExtraspecialVariant::exponent_p:
    case ExtraspecialVariant::exponent_p2: {
      hi = ipow(P, static_cast<unsigned>(n * n));
      int top = variant == ExtraspecialVariant::exponent_p ? n : n - 1;
      for (int i = 1; i <= top; ++i) hi *= ipow(P, static_cast<unsigned>(2 * i)) - 1;
      break;
    }
    case ExtraspecialVariant::plus_type:
    case ExtraspecialVariant::minus_type: {
      hi = ipow(P, static_cast<unsigned>(n * (n - 1) + 1));
      hi *= variant == ExtraspecialVariant::plus_type ? ipow(P, n) - 1 : ipow(P, n) + 1;
      for (int i = 1; i <= n - 1; ++i) hi *= ipow(P, static_cast<unsigned>(2 * i)) - 1;
      break;
    }
  }
  return ipow(P, static_cast<unsigned>(2 * n)) * hi * (p - 1);
}

ExactInt sylow_sym_aut_order(int p, int m) {
  if (!is_prime(p) || p == 2) throw std::invalid_argument("sylow_sym_aut_order: p must be an odd prime");
  if (m < 1) throw std::invalid_argument("sylow_sym_aut_order: m must be positive");
  ExactInt P = p, exponent = 0;
  for (int k = 2; k <= m - 1; ++k) exponent += ipow(P, static_cast<unsigned>(k));
  exponent += ExactInt(m * m - m + 2) * p / 2 - 1;
  return ipow(ExactInt(p - 1), static_cast<unsigned>(m)) * ipow(P, exponent.convert_to<unsigned>());
}

Fingerprint fingerprint(const CayleyGroup& G) {
  Fingerprint f;
  f.order_profile.assign(G.order() + 1, 0);
  for (int a = 0; a < G.order(); ++a) ++f.order_profile[G.element_order(a)];
  f.center_order = center(G).size();
  f.derived_order = derived_subgroup(G).size();
  f.exponent = G.exponent();
  return f;
}

namespace {

CayleyGroup renamed(const CayleyGroup& G, std::string name) {
  return CayleyGroup(std::move(name), G.order(), G.table(), G.generators(), G.labels());
}

Catalog order_p3(int p) {
  std::string q = std::to_string(p), q2 = std::to_string(p * p), q3 = std::to_string(p * p * p);
  Catalog c;
  c.push_back({cyclic(p * p * p), p});
  c.push_back({abelian({p * p, p}), p});
  c.push_back({abelian({p, p, p}, "C" + q + "^3"), p});
  if (p == 2) {
    c.push_back({dihedral(8), p});
    c.push_back({quaternion(8), p});
  } else {
    c.push_back({renamed(unitriangular(3, p), "UT(3," + q + ")"), p});
    c.push_back({renamed(modular(p, 3), "M" + q3), p});
  }
  return c;
}

Catalog order16() {
  auto d8 = dihedral(8), q8 = quaternion(8), c2 = cyclic(2), c4 = cyclic(4);
  auto v4 = abelian({2, 2});
  // C4 acting on C2 x C2 by swapping the factors.
  auto swap_action = [&](int h) {
    std::vector<int> perm(4);
    for (int x = 0; x < 4; ++x) perm[x] = (h % 2) ? ((x % 2) * 2 + x / 2) : x;
    return perm;
  };
  Catalog c;
  c.push_back({cyclic(16), 2});
  c.push_back({abelian({4, 4}, "C4^2"), 2});
  c.push_back({abelian({2, 8}), 2});
  c.push_back({abelian({2, 2, 4}, "C2^2xC4"), 2});
  c.push_back({abelian({2, 2, 2, 2}, "C2^4"), 2});
  c.push_back({dihedral(16), 2});
  c.push_back({quaternion(16), 2});
  c.push_back({semidihedral(16), 2});
  c.push_back({modular(2, 4), 2});
  c.push_back({direct_product(d8, c2), 2});
  c.push_back({direct_product(q8, c2), 2});
  c.push_back({central_product(d8, 2, c4, 2, "D8oC4"), 2});
  c.push_back({semidirect(v4, c4, swap_action, "C2^2:C4"), 2});
  c.push_back({metacyclic("C4:C4", 4, 4, 3, 0), 2});
  return c;
}

Catalog small_catalog() {
  Catalog c = order_p3(2);
  for (auto& e : order16()) c.push_back(std::move(e));
  for (auto& e : order_p3(3)) c.push_back(std::move(e));
  auto d8 = dihedral(8), q8 = quaternion(8);
  c.push_back({abelian({2, 2, 2, 2, 2}, "C2^5"), 2});
  c.push_back({central_product(d8, 2, d8, 2, "D8oD8"), 2});
  c.push_back({central_product(d8, 2, q8, 2, "D8oQ8"), 2});
  c.push_back({unitriangular(4, 2), 2});
  c.push_back({abelian({9, 9}, "C9^2"), 3});
  return c;
}

}  // namespace

std::vector<std::string> bundled_catalog_ids() { return {"order8", "order16", "order27", "order125", "small"}; }

Catalog bundled_catalog(const std::string& id) {
  if (id == "order8") return order_p3(2);
  if (id == "order27") return order_p3(3);
  if (id == "order125") return order_p3(5);
  if (id == "order16") return order16();
  if (id == "small") return small_catalog();
  throw std::invalid_argument("unknown catalog id: " + id);
}

CensusResult census(const Catalog& catalog, const Limits& limits) {
  std::vector<ExactInt> orders(catalog.size());
  parallel_chunks(catalog.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) orders[i] = aut_order(catalog[i].group, limits);
  });
  CensusResult r;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    ++r.total;
    if (prime_power_exponent(orders[i], catalog[i].p) >= 0) ++r.aut_p_groups;
    r.aut_orders.emplace_back(catalog[i].group.name(), orders[i]);
  }
  return r;
}

CensusResult census(int p, int k, const Limits& limits) {
  std::string id;
  if (p == 2 && k == 3) id = "order8";
  if (p == 2 && k == 4) id = "order16";
  if (p == 3 && k == 3) id = "order27";
  if (p == 5 && k == 3) id = "order125";
  if (id.empty())
    throw std::invalid_argument("census: no bundled catalog for p=" + std::to_string(p) + ", k=" + std::to_string(k));
  return census(bundled_catalog(id), limits);
}

}  // namespace pgl::groups
