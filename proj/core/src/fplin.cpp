#include "pgrouplab/fplin.hpp"

#include "fp_rows.hpp"
#include "pgrouplab/parallel.hpp"

#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pgl::fplin {

using detail::inv_mod;
using detail::mod_p;

FpMat::FpMat(int rows, int cols, int p) : rows_(rows), cols_(cols), p_(p) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("FpMat: negative shape");
  if (!is_prime(p)) throw std::invalid_argument("FpMat: modulus must be prime");
  a_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

FpMat::FpMat(int rows, int cols, int p, const std::vector<long long>& row_major) : FpMat(rows, cols, p) {
  if (row_major.size() != a_.size()) throw std::invalid_argument("FpMat: entry count does not match shape");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] = mod_p(row_major[i], p);
}

FpMat FpMat::identity(int n, int p) { return scalar(n, p, 1); }

FpMat FpMat::scalar(int n, int p, long long c) {
  FpMat m(n, n, p);
  for (int i = 0; i < n; ++i) m.set(i, i, c);
  return m;
}

void FpMat::set(int i, int j, long long v) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("FpMat::set: index out of range");
  a_[static_cast<std::size_t>(i) * cols_ + j] = mod_p(v, p_);
}

FpMat FpMat::operator+(const FpMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_) throw std::invalid_argument("FpMat: incompatible sum");
  FpMat r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = (a_[i] + o.a_[i]) % p_;
  return r;
}

FpMat FpMat::operator*(const FpMat& o) const {
  if (cols_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("FpMat: incompatible product");
  FpMat r(rows_, o.cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      long long s = 0;
      for (int k = 0; k < cols_; ++k) s += static_cast<long long>(at(i, k)) * o.at(k, j);
      r.a_[static_cast<std::size_t>(i) * r.cols_ + j] = static_cast<int>(s % p_);
    }
  return r;
}

std::vector<int> FpMat::apply(const std::vector<int>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("FpMat::apply: length mismatch");
  std::vector<int> out(rows_);
  for (int i = 0; i < rows_; ++i) {
    long long s = 0;
    for (int k = 0; k < cols_; ++k) s += static_cast<long long>(at(i, k)) * v[k];
    out[i] = static_cast<int>(s % p_);
  }
  return out;
}

FpMat FpMat::transpose() const {
  FpMat t(cols_, rows_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.a_[static_cast<std::size_t>(j) * rows_ + i] = at(i, j);
  return t;
}

FpMat FpMat::inverse() const {
  if (rows_ != cols_) throw std::domain_error("FpMat::inverse: matrix is not square");
  detail::Rows aug(rows_, std::vector<int>(2 * cols_, 0));
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug[i][j] = at(i, j);
    aug[i][cols_ + i] = 1;
  }
  auto pivots = detail::rref(aug, p_);
  if (static_cast<int>(pivots.size()) < rows_ || (rows_ && static_cast<int>(pivots.back()) >= cols_))
    throw std::domain_error("FpMat::inverse: matrix is singular");
  FpMat r(rows_, cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.a_[static_cast<std::size_t>(i) * cols_ + j] = aug[i][cols_ + j];
  return r;
}

FpMat FpMat::power(long long e) const {
  if (rows_ != cols_) throw std::domain_error("FpMat::power: matrix is not square");
  FpMat base = e < 0 ? inverse() : *this;
  unsigned long long k = e < 0 ? -static_cast<unsigned long long>(e) : static_cast<unsigned long long>(e);
  FpMat r = identity(rows_, p_);
  for (; k; k >>= 1) {
    if (k & 1) r = r * base;
    base = base * base;
  }
  return r;
}

int FpMat::rank() const {
  detail::Rows rows(rows_, std::vector<int>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) rows[i][j] = at(i, j);
  return static_cast<int>(detail::rank(rows, p_));
}

int FpMat::determinant() const {
  if (rows_ != cols_) throw std::domain_error("FpMat::determinant: matrix is not square");
  detail::Rows m(rows_, std::vector<int>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m[i][j] = at(i, j);
  long long det = 1;
  for (int c = 0; c < cols_; ++c) {
    int piv = c;
    while (piv < rows_ && m[piv][c] == 0) ++piv;
    if (piv == rows_) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = p_ - det;
    }
    det = det * m[c][c] % p_;
    long long s = inv_mod(m[c][c], p_);
    for (int i = c + 1; i < rows_; ++i) {
      if (!m[i][c]) continue;
      long long f = m[i][c] * s % p_;
      for (int j = c; j < cols_; ++j) m[i][j] = mod_p(m[i][j] - f * m[c][j], p_);
    }
  }
  return static_cast<int>(det % p_);
}

bool FpMat::is_scalar() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? at(0, 0) : 0)) return false;
  return true;
}

std::string FpMat::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
  }
  os << ']';
  return os.str();
}

FpSubspace::FpSubspace(int ambient, int p, std::vector<std::vector<int>> spanning)
    : ambient_(ambient), p_(p), rows_(std::move(spanning)) {
  if (ambient < 0) throw std::invalid_argument("FpSubspace: negative ambient dimension");
  for (auto& r : rows_) {
    if (static_cast<int>(r.size()) != ambient) throw std::invalid_argument("FpSubspace: vector length mismatch");
    for (auto& x : r) x = mod_p(x, p);
  }
  detail::rref(rows_, p_);
}

bool FpSubspace::contains(std::vector<int> v) const {
  if (static_cast<int>(v.size()) != ambient_) throw std::invalid_argument("FpSubspace::contains: length mismatch");
  for (auto& x : v) x = mod_p(x, p_);
  return detail::reduce(rows_, v, p_);
}

FpSubspace FpSubspace::image(const FpMat& g) const {
  std::vector<std::vector<int>> imgs;
  imgs.reserve(rows_.size());
  for (const auto& r : rows_) imgs.push_back(g.apply(r));
  return FpSubspace(ambient_, p_, std::move(imgs));
}

bool FpSubspace::invariant_under(const FpMat& g) const {
  for (const auto& r : rows_)
    if (!contains(g.apply(r))) return false;
  return true;
}

std::vector<int> FpSubspace::key() const {
  std::vector<int> k;
  k.reserve(rows_.size() * ambient_ + 1);
  k.push_back(dim());
  for (const auto& r : rows_) k.insert(k.end(), r.begin(), r.end());
  return k;
}

LinearAction make_action(std::vector<FpMat> elements, std::string provenance, bool split_model) {
  if (elements.empty()) throw std::invalid_argument("make_action: empty group");
  int m = elements[0].rows(), p = elements[0].modulus();
  bool has_identity = false;
  std::set<std::vector<int>> members;
  for (const auto& g : elements) {
    if (g.rows() != m || g.cols() != m || g.modulus() != p)
      throw std::invalid_argument("make_action: elements differ in shape or modulus");
    if (!g.invertible()) throw std::invalid_argument("make_action: singular element");
    has_identity = has_identity || g == FpMat::identity(m, p);
    members.insert(g.entries());
  }
  if (!has_identity) throw std::invalid_argument("make_action: identity missing");
  if (elements.size() <= 2000)
    for (const auto& a : elements)
      for (const auto& b : elements)
        if (!members.count((a * b).entries())) throw std::invalid_argument("make_action: set is not closed");
  return {std::move(elements), std::move(provenance), split_model};
}

ExactInt subspace_total(int m, int p) {
  if (m < 0) throw std::invalid_argument("subspace_total: negative dimension");
  // Goldman-Rota recurrence G_{n+1} = 2 G_n + (p^n - 1) G_{n-1}.
  ExactInt prev = 1, cur = 2, pn = p;  // G_0, G_1, p^1
  if (m == 0) return 1;
  for (int n = 1; n < m; ++n) {
    ExactInt next = 2 * cur + (pn - 1) * prev;
    prev = cur;
    cur = next;
    pn *= p;
  }
  return cur;
}

namespace {

void subspaces_of_dim(int m, int p, int k, const std::function<void(const FpSubspace&)>& visit) {
  std::vector<int> piv(k);
  std::iota(piv.begin(), piv.end(), 0);
  while (true) {
    std::vector<std::pair<int, int>> free;
    std::vector<bool> is_piv(m, false);
    for (int c : piv) is_piv[c] = true;
    for (int i = 0; i < k; ++i)
      for (int j = piv[i] + 1; j < m; ++j)
        if (!is_piv[j]) free.emplace_back(i, j);
    std::vector<std::vector<int>> rows(k, std::vector<int>(m, 0));
    for (int i = 0; i < k; ++i) rows[i][piv[i]] = 1;
    std::vector<int> vals(free.size(), 0);
    while (true) {
      for (std::size_t f = 0; f < free.size(); ++f) rows[free[f].first][free[f].second] = vals[f];
      visit(FpSubspace(m, p, rows));
      std::size_t f = free.size();
      while (f > 0 && vals[f - 1] == p - 1) vals[--f] = 0;
      if (f == 0) break;
      ++vals[f - 1];
    }
    int i = k - 1;
    while (i >= 0 && piv[i] == m - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
}

}  // namespace

void for_each_subspace(int m, int p, std::optional<int> dim, const std::function<void(const FpSubspace&)>& visit,
                       const Limits& limits) {
  if (m < 0 || !is_prime(p)) throw std::invalid_argument("for_each_subspace: bad dimension or modulus");
  enforce_guard(subspace_total(m, p) <= 1000000, limits, "subspace count exceeds 10^6");
  if (dim && (*dim < 0 || *dim > m)) return;
  for (int k = 0; k <= m; ++k)
    if (!dim || *dim == k) subspaces_of_dim(m, p, k, visit);
}

std::vector<FpSubspace> enumerate_subspaces(int m, int p, std::optional<int> dim, const Limits& limits) {
  std::vector<FpSubspace> out;
  for_each_subspace(m, p, dim, [&](const FpSubspace& s) { out.push_back(s); }, limits);
  return out;
}

ExactInt gl_order(int d, int p) {
  ExactInt pd = ipow(ExactInt(p), static_cast<unsigned>(d)), order = 1, pi = 1;
  for (int i = 0; i < d; ++i, pi *= p) order *= pd - pi;
  return order;
}

void for_each_gl(int d, int p, const std::function<void(const FpMat&)>& visit) {
  if (d < 1 || !is_prime(p)) throw std::invalid_argument("for_each_gl: bad dimension or modulus");
  int q = 1;
  for (int i = 0; i < d; ++i) q *= p;
  std::vector<std::vector<int>> vecs(q, std::vector<int>(d));
  for (int code = 0; code < q; ++code)
    for (int i = d - 1, c = code; i >= 0; --i, c /= p) vecs[code][i] = c % p;
  auto encode = [&](const std::vector<int>& v) {
    int c = 0;
    for (int x : v) c = c * p + x;
    return c;
  };
  std::vector<int> chosen;
  std::vector<std::vector<char>> in_span(d + 1, std::vector<char>(q, 0));
  in_span[0][0] = 1;
  FpMat g(d, d, p);
  std::function<void(int)> rec = [&](int depth) {
    if (depth == d) {
      visit(g);
      return;
    }
    for (int code = 0; code < q; ++code) {
      if (in_span[depth][code]) continue;
      for (int j = 0; j < d; ++j) g.set(depth, j, vecs[code][j]);
      auto& next = in_span[depth + 1];
      std::fill(next.begin(), next.end(), 0);
      for (int s = 0; s < q; ++s) {
        if (!in_span[depth][s]) continue;
        std::vector<int> w = vecs[s];
        for (int c = 0; c < p; ++c) {
          next[encode(w)] = 1;
          for (int j = 0; j < d; ++j) w[j] = (w[j] + vecs[code][j]) % p;
        }
      }
      rec(depth + 1);
    }
  };
  rec(0);
}

std::vector<FpMat> gl_enumerate(int d, int p, const Limits& limits) {
  enforce_guard(gl_order(d, p) <= 1000000, limits, "|GL(d,p)| exceeds 10^6");
  std::vector<FpMat> out;
  for_each_gl(d, p, [&](const FpMat& g) { out.push_back(g); });
  return out;
}

FpMat random_gl(int d, int p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(0, p - 1);
  while (true) {
    FpMat g(d, d, p);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g.set(i, j, coef(rng));
    if (g.invertible()) return g;
  }
}

ExactInt invariant_subspace_count(const FpMat& g, const Limits& limits) {
  if (g.rows() != g.cols() || !g.invertible()) throw std::domain_error("invariant_subspace_count: g is singular");
  long long count = 0;
  for_each_subspace(g.rows(), g.modulus(), std::nullopt, [&](const FpSubspace& s) { count += s.invariant_under(g); },
                    limits);
  return count;
}

FpMat wedge_matrix(const FpMat& g) {
  int d = g.rows(), p = g.modulus();
  if (g.cols() != d) throw std::invalid_argument("wedge_matrix: g must be square");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
  int m = d + static_cast<int>(pairs.size());
  FpMat w(m, m, p);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) w.set(i, j, g.at(i, j));
  for (std::size_t r = 0; r < pairs.size(); ++r)
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      auto [k, l] = pairs[r];
      auto [i, j] = pairs[c];
      long long v = static_cast<long long>(g.at(k, i)) * g.at(l, j) - static_cast<long long>(g.at(l, i)) * g.at(k, j);
      w.set(d + static_cast<int>(r), d + static_cast<int>(c), v);
    }
  return w;
}

LinearAction natural_module(int d, int p, const Limits& limits) {
  return make_action(gl_enumerate(d, p, limits), "GL(" + std::to_string(d) + "," + std::to_string(p) + ") natural");
}

LinearAction wedge_module(int d, int p, const Limits& limits) {
  std::vector<FpMat> els;
  for (const auto& g : gl_enumerate(d, p, limits)) els.push_back(wedge_matrix(g));
  bool split = p == 2;
  std::string note = "GL(" + std::to_string(d) + "," + std::to_string(p) + ") on V + wedge^2 V";
  if (split) note += "; split-model (direct sum used for p = 2)";
  return make_action(std::move(els), note, split);
}

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<int>& k) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : k) h = (h ^ static_cast<std::size_t>(x + 1)) * 1099511628211ull;
    return h;
  }
};

void guard_work(const LinearAction& action, const Limits& limits) {
  if (action.elements.empty()) throw std::invalid_argument("empty action");
  ExactInt work = ExactInt(action.elements.size()) * subspace_total(action.dimension(), action.modulus());
  enforce_guard(work <= 200000000, limits, "|group| x subspace count exceeds 2*10^8");
}

}  // namespace

CauchyFrobeniusResult cauchy_frobenius(const LinearAction& action, const Limits& limits) {
  guard_work(action, limits);
  const auto& els = action.elements;
  std::vector<long long> fixed(els.size(), 0);
  parallel_chunks(els.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      fixed[i] = static_cast<long long>(invariant_subspace_count(els[i], limits));
  });
  CauchyFrobeniusResult r;
  ExactInt total = 0;
  for (long long f : fixed) {
    r.fixed_point_counts.emplace_back(f);
    total += f;
  }
  ExactInt q, rem;
  boost::multiprecision::divide_qr(total, ExactInt(els.size()), q, rem);
  if (rem != 0) throw std::logic_error("cauchy_frobenius: fixed-point sum not divisible by |group|");
  r.orbit_count = q;
  return r;
}

OrbitCensus regular_orbits(const LinearAction& action, const Limits& limits) {
  guard_work(action, limits);
  auto subs = enumerate_subspaces(action.dimension(), action.modulus(), std::nullopt, limits);
  std::unordered_map<std::vector<int>, std::size_t, KeyHash> index;
  for (std::size_t i = 0; i < subs.size(); ++i) index.emplace(subs[i].key(), i);

  std::vector<std::size_t> parent(subs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (const auto& g : action.elements) {
      std::size_t a = find(i), b = find(index.at(subs[i].image(g).key()));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

  std::vector<std::size_t> sizes(subs.size(), 0);
  for (std::size_t i = 0; i < subs.size(); ++i) ++sizes[find(i)];
  OrbitCensus census;
  census.regular_count = 0;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (find(i) != i) continue;
    OrbitRecord rec;
    rec.size = sizes[i];
    rec.representative_dim = subs[i].dim();
    for (const auto& g : action.elements) rec.stabilizer_order += subs[i].image(g) == subs[i];
    if (rec.stabilizer_order == 1) census.regular_count += 1;
    census.orbits.push_back(rec);
  }
  return census;
}

}  // namespace pgl::fplin
