#include "pgrouplab/submod.hpp"

#include "fp_rows.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace pgl::submod {

using detail::inv_mod;
using detail::mod_p;
using fplin::FpMat;
using qcombin::gauss_binom;

ExactInt submodule_count(const Partition& alpha, const Partition& beta, const ExactInt& q) {
  if (!beta.contained_in(alpha)) return 0;
  ExactInt result = 1;
  for (int i = 0; i < beta.length(); ++i) {
    int a = alpha[i], b = beta[i], b_next = beta[i + 1];
    result *= gauss_binom(a - b_next, b - b_next, q) * ipow(q, static_cast<unsigned>(b_next * (a - b)));
  }
  return result;
}

ExactInt total_submodules(const Partition& alpha, const ExactInt& q, const Limits& limits) {
  ExactInt lattice = 1;
  for (int a : alpha.parts()) lattice *= a + 1;
  enforce_guard(lattice <= 1000000, limits, "partition containment lattice exceeds 10^6");
  ExactInt total = 0;
  for (const auto& beta : qcombin::subpartitions(alpha)) total += submodule_count(alpha, beta, q);
  return total;
}

namespace {

// Z/p^{l_1} x ... x Z/p^{l_r} with elements in mixed radix.
class AbelianPGroup {
 public:
  AbelianPGroup(int p, const std::vector<int>& lambda) : p_(p) {
    order_ = 1;
    for (int l : lambda) {
      int m = 1;
      for (int i = 0; i < l; ++i) m *= p;
      moduli_.push_back(m);
      order_ *= m;
    }
    exponent_.resize(order_);
    for (int x = 0; x < order_; ++x) {
      int e = 0, c = x;
      for (std::size_t i = 0; i < moduli_.size(); ++i) {
        int v = c % moduli_[i], ord = moduli_[i];
        c /= moduli_[i];
        int k = 0;
        for (int o = ord / std::gcd(v == 0 ? ord : v, ord); o > 1; o /= p_) ++k;
        e = std::max(e, k);
      }
      exponent_[x] = e;
    }
  }

  int order() const { return order_; }
  int exponent_of(int x) const { return exponent_[x]; }

  int add(int x, int y) const {
    int r = 0, scale = 1;
    for (int m : moduli_) {
      r += ((x % m + y % m) % m) * scale;
      x /= m;
      y /= m;
      scale *= m;
    }
    return r;
  }

 private:
  int p_, order_;
  std::vector<int> moduli_, exponent_;
};

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::size_t h = 0;
    for (auto w : b) h = h * 0x9E3779B97F4A7C15ull + w;
    return h;
  }
};

bool test_bit(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1u; }
void set_bit(Bits& b, int i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

}  // namespace

ExactInt abelian_subgroup_oracle(int p, const Partition& lambda, const Partition& mu, const Limits& limits) {
  if (!is_prime(p)) throw std::invalid_argument("abelian_subgroup_oracle: p must be prime");
  enforce_guard(ipow(ExactInt(p), static_cast<unsigned>(lambda.size())) <= 4096, limits,
                "abelian_subgroup_oracle requires |G| <= 4096");
  AbelianPGroup G(p, lambda.parts());
  const int n = G.order();
  const std::size_t words = static_cast<std::size_t>(n + 63) / 64;

  // Target: log_p |H[p^k]| for every k.
  int max_k = std::max(lambda.empty() ? 0 : lambda[0], mu.empty() ? 0 : mu[0]);
  std::vector<int> target(max_k + 1, 0);
  for (int k = 0; k <= max_k; ++k)
    for (int part : mu.parts()) target[k] += std::min(part, k);

  auto type_matches = [&](const std::vector<int>& elems) {
    std::vector<long long> counts(max_k + 1, 0);
    for (int x : elems)
      for (int k = G.exponent_of(x); k <= max_k; ++k) ++counts[k];
    for (int k = 0; k <= max_k; ++k) {
      long long expect = 1;
      for (int i = 0; i < target[k]; ++i) expect *= p;
      if (counts[k] != expect) return false;
    }
    return true;
  };

  std::unordered_set<Bits, BitsHash> seen;
  std::queue<std::vector<int>> frontier;
  Bits zero(words, 0);
  set_bit(zero, 0);
  seen.insert(zero);
  frontier.push({0});
  long long matches = 0;
  while (!frontier.empty()) {
    auto H = std::move(frontier.front());
    frontier.pop();
    if (type_matches(H)) ++matches;
    Bits in_h(words, 0), covered(words, 0);
    for (int h : H) set_bit(in_h, h);
    for (int x = 1; x < n; ++x) {
      if (test_bit(covered, x)) continue;
      for (int h : H) set_bit(covered, G.add(x, h));
      if (test_bit(in_h, x)) continue;
      // <H, x> as a union of cosets H + kx.
      Bits gen = in_h;
      std::vector<int> elems = H;
      for (int y = x; !test_bit(gen, y); y = G.add(y, x))
        for (int h : H) {
          int z = G.add(y, h);
          set_bit(gen, z);
          elems.push_back(z);
        }
      if (seen.insert(gen).second) {
        enforce_guard(seen.size() <= 200000, limits, "abelian_subgroup_oracle: more than 2*10^5 subgroups");
        frontier.push(std::move(elems));
      }
    }
  }
  return matches;
}

std::string poly_to_string(const FpPoly& f) {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    if (!f[i]) continue;
    os << (first ? "" : " + ");
    if (f[i] != 1 || i == 0) os << f[i];
    if (i >= 1) os << "t";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return first ? "0" : os.str();
}

namespace {

void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Divides a by b in place when b divides a; returns whether it did.
bool divide_exact(FpPoly& a, const FpPoly& b, int p) {
  FpPoly r = a;
  int db = static_cast<int>(b.size()) - 1;
  if (static_cast<int>(r.size()) - 1 < db) return false;
  FpPoly quot(r.size() - db, 0);
  int lead_inv = inv_mod(b.back(), p);
  for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
    int c = static_cast<int>(static_cast<long long>(r[i]) * lead_inv % p);
    quot[i - db] = c;
    if (!c) continue;
    for (int j = 0; j <= db; ++j) r[i - db + j] = mod_p(r[i - db + j] - static_cast<long long>(c) * b[j], p);
  }
  trim(r);
  if (!r.empty()) return false;
  a = quot;
  return true;
}

std::mutex irreducible_mutex;
std::map<std::pair<int, int>, std::vector<FpPoly>> irreducible_cache;

}  // namespace

std::vector<FpPoly> monic_irreducibles(int p, int k) {
  if (!is_prime(p) || k < 1) throw std::invalid_argument("monic_irreducibles: bad modulus or degree");
  if (ExactInt(p) > 1000 || ipow(ExactInt(p), static_cast<unsigned>(k)) > 10000000)
    throw ResourceGuardError("resource guard: monic_irreducibles needs p^k <= 10^7");
  {
    std::lock_guard<std::mutex> lock(irreducible_mutex);
    auto it = irreducible_cache.find({p, k});
    if (it != irreducible_cache.end()) return it->second;
  }
  std::vector<std::vector<FpPoly>> smaller;
  for (int j = 1; j <= k / 2; ++j) smaller.push_back(monic_irreducibles(p, j));
  std::vector<FpPoly> out;
  long long total = 1;
  for (int i = 0; i < k; ++i) total *= p;
  for (long long code = 0; code < total; ++code) {
    FpPoly f(k + 1, 0);
    f[k] = 1;
    long long c = code;
    for (int i = k - 1; i >= 0; --i, c /= p) f[i] = static_cast<int>(c % p);
    bool irreducible = true;
    for (const auto& level : smaller) {
      for (const auto& g : level) {
        FpPoly tmp = f;
        if (divide_exact(tmp, g, p)) {
          irreducible = false;
          break;
        }
      }
      if (!irreducible) break;
    }
    if (irreducible) out.push_back(f);
  }
  std::lock_guard<std::mutex> lock(irreducible_mutex);
  irreducible_cache.emplace(std::make_pair(p, k), out);
  return out;
}

FpPoly minimal_polynomial(const FpMat& g) {
  int m = g.rows(), p = g.modulus();
  if (g.cols() != m || m == 0) throw std::invalid_argument("minimal_polynomial: g must be square and nonempty");
  const std::size_t width = static_cast<std::size_t>(m) * m;
  // Rows hold vec(g^k) followed by the coefficients expressing them in powers of g.
  std::vector<std::vector<int>> basis;
  std::vector<std::size_t> pivots;
  FpMat power = FpMat::identity(m, p);
  for (int k = 0; k <= m; ++k, power = power * g) {
    std::vector<int> row(width + m + 1, 0);
    std::copy(power.entries().begin(), power.entries().end(), row.begin());
    row[width + k] = 1;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      int c = row[pivots[b]];
      if (!c) continue;
      for (std::size_t j = 0; j < row.size(); ++j)
        row[j] = mod_p(row[j] - static_cast<long long>(c) * basis[b][j], p);
    }
    std::size_t lead = 0;
    while (lead < width && !row[lead]) ++lead;
    if (lead == width) {
      FpPoly f(row.begin() + static_cast<std::ptrdiff_t>(width), row.begin() + static_cast<std::ptrdiff_t>(width) + k + 1);
      int s = inv_mod(f.back(), p);
      for (auto& x : f) x = static_cast<int>(static_cast<long long>(x) * s % p);
      return f;
    }
    int s = inv_mod(row[lead], p);
    for (auto& x : row) x = static_cast<int>(static_cast<long long>(x) * s % p);
    basis.push_back(std::move(row));
    pivots.push_back(lead);
  }
  throw std::logic_error("minimal_polynomial: no relation up to degree m");
}

namespace {

FpMat evaluate(const FpPoly& f, const FpMat& g) {
  FpMat r(g.rows(), g.cols(), g.modulus());
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * g + FpMat::scalar(g.rows(), g.modulus(), *it);
  return r;
}

}  // namespace

int PrimaryDecomposition::dimension() const {
  int total = 0;
  for (const auto& c : components) total += (static_cast<int>(c.f.size()) - 1) * c.mu.size();
  return total;
}

PrimaryDecomposition decompose(const FpMat& g) {
  int m = g.rows(), p = g.modulus();
  if (g.cols() != m) throw std::invalid_argument("decompose: g must be square");
  if (m > 8) throw ResourceGuardError("resource guard: decompose requires m <= 8");
  if (!g.invertible()) throw std::domain_error("decompose: g is singular");

  FpPoly rest = minimal_polynomial(g);
  std::vector<std::pair<FpPoly, int>> factors;
  for (int k = 1; 2 * k <= static_cast<int>(rest.size()) - 1; ++k)
    for (const auto& f : monic_irreducibles(p, k)) {
      int e = 0;
      while (divide_exact(rest, f, p)) ++e;
      if (e) factors.emplace_back(f, e);
    }
  if (rest.size() > 1) factors.emplace_back(rest, 1);

  PrimaryDecomposition dec;
  dec.p = p;
  for (const auto& [f, e] : factors) {
    int u = static_cast<int>(f.size()) - 1;
    FpMat a = evaluate(f, g), ak = FpMat::identity(m, p);
    std::vector<int> at_least;  // number of blocks of size >= j
    int prev_kernel = 0;
    for (int j = 1; j <= e; ++j) {
      ak = ak * a;
      int kernel = m - ak.rank();
      int jump = kernel - prev_kernel;
      if (jump % u) throw std::logic_error("decompose: kernel jump not divisible by the degree");
      at_least.push_back(jump / u);
      prev_kernel = kernel;
    }
    dec.components.push_back({f, Partition(at_least).conjugate(), ipow(ExactInt(p), static_cast<unsigned>(u))});
  }
  std::sort(dec.components.begin(), dec.components.end(), [](const auto& x, const auto& y) {
    return x.f.size() != y.f.size() ? x.f.size() < y.f.size() : x.f < y.f;
  });
  if (dec.dimension() != m) throw std::logic_error("decompose: component dimensions do not add up");
  return dec;
}

ExactInt structural_sm(const PrimaryDecomposition& dec, const Limits& limits) {
  ExactInt total = 1;
  for (const auto& c : dec.components) {
    auto t = c.type();
    total *= total_submodules(t.alpha, t.q, limits);
  }
  return total;
}

namespace {

constexpr double kLogSlack = 1e-12;

BoundReal log_enclosure(const BoundReal& x, int p) {
  if (!(x.lo() > 0)) throw std::domain_error("log of a nonpositive enclosure");
  double lp = std::log(static_cast<double>(p));
  double lo = std::log(x.lo()) / lp, hi = std::log(x.hi()) / lp;
  double slack = kLogSlack * (std::abs(lo) + std::abs(hi) + 1.0);
  return {0.5 * (lo + hi), 0.5 * (hi - lo) + slack};
}

}  // namespace

BoundReal log_base(const ExactInt& x, int p) {
  if (x <= 0) throw std::domain_error("log_base: nonpositive argument");
  double v = log_of(x) / std::log(static_cast<double>(p));
  return {v, kLogSlack * (std::abs(v) + 1.0)};
}

BoundReal epsilon(int p) {
  if (!is_prime(p)) throw std::invalid_argument("epsilon: p must be prime");
  double x = static_cast<double>(p);
  return log_enclosure(qcombin::c_series(x) * qcombin::d_series(x), p);
}

SmReport sm_value_and_bound(const FpMat& g, const Limits& limits) {
  int m = g.rows(), p = g.modulus();
  if (m < 2) throw std::invalid_argument("sm_value_and_bound: requires m >= 2");
  SmReport r;
  r.sm = structural_sm(decompose(g), limits);
  r.log_sm = log_base(r.sm, p);
  r.scalar_case = g.is_scalar();
  if (r.scalar_case) {
    ExactInt galois = qcombin::galois_number(m, p);
    r.bound = log_base(galois, p);
    r.holds = r.sm == galois;
  } else {
    BoundReal eps = epsilon(p);
    r.bound = BoundReal{(m * m - 2.0 * m + 2.0) / 4.0, 0.0} + BoundReal{2.0, 0.0} * eps;
    r.holds = qcombin::certainly_le(r.log_sm, r.bound);
  }
  return r;
}

BoundReal stronger_bound(int m, int p) {
  int v = 2;
  while (v * (v + 1) / 2 < m) ++v;
  if (m < 3 || v * (v + 1) / 2 != m) throw std::invalid_argument("stronger_bound: m must be v(v+1)/2 with v >= 2");
  BoundReal eps = epsilon(p);
  double base = (m - 4.0) * (m - 4.0) / 4.0;
  if (m <= 45) return BoundReal{base + 2.0 * m - 4.0, 0.0} + eps;
  return BoundReal{base + 4.0, 0.0} + BoundReal{5.0, 0.0} * eps;
}

}  // namespace pgl::submod
