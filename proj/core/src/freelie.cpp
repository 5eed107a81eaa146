#include "pgrouplab/freelie.hpp"

#include "fp_rows.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace pgl::freelie {

using detail::mod_p;

std::string word_to_string(const Word& w) {
  std::string s;
  for (int c : w) s += std::to_string(c);
  return s;
}

Word word_from_string(const std::string& digits) {
  Word w;
  for (char ch : digits) {
    if (ch < '1' || ch > '9') throw std::invalid_argument("word letters must be digits 1..9");
    w.push_back(ch - '0');
  }
  return w;
}

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  for (std::size_t k = 1; k < w.size(); ++k)
    if (!(w < Word(w.begin() + static_cast<std::ptrdiff_t>(k), w.end()))) return false;
  return true;
}

NcPoly::NcPoly(int p, int d) : p_(p), d_(d) {
  if (p < 2) throw std::invalid_argument("NcPoly: modulus must be at least 2");
  if (d < 1) throw std::invalid_argument("NcPoly: alphabet must be nonempty");
}

NcPoly NcPoly::generator(int p, int d, int j) { return monomial(p, d, Word{j}); }

NcPoly NcPoly::monomial(int p, int d, const Word& w, long long coeff) {
  NcPoly f(p, d);
  f.add_term(w, coeff);
  return f;
}

int NcPoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? 0 : it->second;
}

void NcPoly::add_term(const Word& w, long long coeff) {
  for (int c : w)
    if (c < 1 || c > d_) throw std::out_of_range("NcPoly: letter outside the alphabet");
  int c = mod_p(coeff, p_);
  if (!c) return;
  auto [it, fresh] = terms_.emplace(w, c);
  if (!fresh) {
    it->second = (it->second + c) % p_;
    if (!it->second) terms_.erase(it);
  }
}

void NcPoly::check_compatible(const NcPoly& o) const {
  if (p_ != o.p_ || d_ != o.d_) throw std::invalid_argument("NcPoly: mismatched modulus or alphabet");
}

NcPoly NcPoly::operator+(const NcPoly& o) const {
  check_compatible(o);
  NcPoly r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

NcPoly NcPoly::operator-(const NcPoly& o) const {
  check_compatible(o);
  NcPoly r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, p_ - c);
  return r;
}

NcPoly NcPoly::operator*(const NcPoly& o) const {
  check_compatible(o);
  NcPoly r(p_, d_);
  for (const auto& [u, a] : terms_)
    for (const auto& [v, b] : o.terms_) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      r.add_term(w, static_cast<long long>(a) * b);
    }
  return r;
}

NcPoly NcPoly::scaled(long long c) const {
  NcPoly r(p_, d_);
  for (const auto& [w, a] : terms_) r.add_term(w, a * mod_p(c, p_));
  return r;
}

bool NcPoly::operator==(const NcPoly& o) const {
  return p_ == o.p_ && d_ == o.d_ && terms_ == o.terms_;
}

std::string NcPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    os << (first ? "" : " + ") << c;
    for (int l : w) os << "*x" << l;
    first = false;
  }
  return os.str();
}

NcPoly lie_bracket(const NcPoly& f, const NcPoly& g) { return f * g - g * f; }

std::vector<Word> lyndon_words(int d, int n, const Limits& limits) {
  if (d < 1 || n < 1) throw std::invalid_argument("lyndon_words: d and n must be positive");
  enforce_guard(d <= 8 && n <= 12, limits, "lyndon_words requires d <= 8 and n <= 12");
  std::vector<Word> out;
  Word w{1};
  while (!w.empty()) {
    if (static_cast<int>(w.size()) == n) out.push_back(w);
    std::size_t m = w.size();
    while (static_cast<int>(w.size()) < n) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == d) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return out;
}

namespace {

Bracketing bracket_rec(const Word& w, int p, int d) {
  if (w.size() == 1) return {"x" + std::to_string(w[0]), NcPoly::generator(p, d, w[0])};
  for (std::size_t k = 1; k < w.size(); ++k) {
    Word tail(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
    if (!is_lyndon(tail)) continue;
    Word head(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
    auto left = bracket_rec(head, p, d);
    auto right = bracket_rec(tail, p, d);
    return {"[" + left.tree + "," + right.tree + "]", lie_bracket(left.expansion, right.expansion)};
  }
  throw std::logic_error("Lyndon word without a Lyndon tail");
}

}  // namespace

Bracketing right_bracketing(const Word& w, int p, int d) {
  if (!is_lyndon(w)) throw std::invalid_argument("right_bracketing: word is not Lyndon");
  for (int c : w)
    if (c < 1 || c > d) throw std::out_of_range("right_bracketing: letter outside the alphabet");
  return bracket_rec(w, p, d);
}

std::vector<NcPoly> lambda_basis(int d, int n, int p, const Limits& limits) {
  std::vector<NcPoly> out;
  for (const auto& w : lyndon_words(d, n, limits)) out.push_back(right_bracketing(w, p, d).expansion);
  return out;
}

namespace {

int mobius(int n) {
  int result = 1;
  for (int f = 2; f * f <= n; ++f) {
    if (n % f) continue;
    n /= f;
    if (n % f == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

}  // namespace

ExactInt witt_dim(int d, int n) {
  if (n < 1) throw std::invalid_argument("witt_dim: n must be positive");
  ExactInt total = 0;
  for (int j = 1; j <= n; ++j)
    if (n % j == 0) total += mobius(n / j) * ipow(ExactInt(d), j);
  ExactInt q, r;
  boost::multiprecision::divide_qr(total, ExactInt(n), q, r);
  if (r != 0) throw std::logic_error("witt_dim: inexact division");
  return q;
}

ExactInt dn_dim(int d, int n) {
  if (n < 1) throw std::invalid_argument("dn_dim: n must be positive");
  ExactInt total = 0;
  for (int i = 1; i <= n; ++i) total += witt_dim(d, i);
  return total;
}

NcPoly com_j(const NcPoly& f, int j) {
  if (j < 1 || j > f.alphabet()) throw std::out_of_range("com_j: generator index out of range");
  return lie_bracket(f, NcPoly::generator(f.modulus(), f.alphabet(), j));
}

LieSubspace::LieSubspace(int p, int d, int lo, int hi, const std::vector<NcPoly>& spanning)
    : p_(p), d_(d), lo_(lo), hi_(hi), width_(0) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("LieSubspace: bad degree range");
  std::size_t block = 1;
  for (int l = 1; l <= hi; ++l) {
    block *= static_cast<std::size_t>(d);
    if (l >= lo) width_ += block;
    if (width_ > (1u << 22)) throw ResourceGuardError("LieSubspace: ambient word space too large");
  }
  for (const auto& f : spanning) {
    if (f.modulus() != p || f.alphabet() != d)
      throw std::invalid_argument("LieSubspace: mismatched modulus or alphabet");
    rows_.push_back(coordinates(f));
  }
  detail::rref(rows_, p_);
}

std::vector<int> LieSubspace::coordinates(const NcPoly& f) const {
  std::vector<int> v(width_, 0);
  for (const auto& [w, c] : f.terms()) {
    int len = static_cast<int>(w.size());
    if (len < lo_ || len > hi_) throw std::invalid_argument("LieSubspace: polynomial outside the degree range");
    std::size_t offset = 0, block = 1;
    for (int l = 1; l < len; ++l) {
      block *= static_cast<std::size_t>(d_);
      if (l >= lo_) offset += block;
    }
    std::size_t idx = 0;
    for (int letter : w) idx = idx * static_cast<std::size_t>(d_) + static_cast<std::size_t>(letter - 1);
    v[offset + idx] = c;
  }
  return v;
}

NcPoly LieSubspace::polynomial(const std::vector<int>& row) const {
  NcPoly f(p_, d_);
  std::size_t pos = 0, block = 1;
  for (int l = 1; l <= hi_; ++l) {
    block *= static_cast<std::size_t>(d_);
    if (l < lo_) continue;
    for (std::size_t idx = 0; idx < block; ++idx, ++pos) {
      if (!row[pos]) continue;
      Word w(l);
      std::size_t code = idx;
      for (int i = l - 1; i >= 0; --i, code /= static_cast<std::size_t>(d_))
        w[i] = static_cast<int>(code % static_cast<std::size_t>(d_)) + 1;
      f.add_term(w, row[pos]);
    }
  }
  return f;
}

std::vector<NcPoly> LieSubspace::basis() const {
  std::vector<NcPoly> out;
  for (const auto& r : rows_) out.push_back(polynomial(r));
  return out;
}

bool LieSubspace::contains(const NcPoly& f) const {
  auto v = coordinates(f);
  return detail::reduce(rows_, v, p_);
}

LieSubspace LieSubspace::widened(int lo, int hi) const {
  if (lo > lo_ || hi < hi_) throw std::invalid_argument("LieSubspace::widened: range must contain the current one");
  return LieSubspace(p_, d_, lo, hi, basis());
}

LieSubspace LieSubspace::sum(const LieSubspace& other) const {
  if (p_ != other.p_ || d_ != other.d_) throw std::invalid_argument("LieSubspace::sum: mismatched spaces");
  auto gens = basis();
  for (const auto& f : other.basis()) gens.push_back(f);
  return LieSubspace(p_, d_, std::min(lo_, other.lo_), std::max(hi_, other.hi_), gens);
}

LieSubspace com_subspace(const LieSubspace& W) {
  std::vector<NcPoly> images;
  for (const auto& f : W.basis())
    for (int j = 1; j <= W.alphabet(); ++j) images.push_back(com_j(f, j));
  return LieSubspace(W.modulus(), W.alphabet(), W.low_degree() + 1, W.high_degree() + 1, images);
}

ExpansionReport expansion_check(const LieSubspace& W, ExpansionMode mode) {
  ExpansionReport rep;
  rep.dim_w = W.dim();
  LieSubspace image = com_subspace(W);
  if (mode == ExpansionMode::homogeneous) {
    rep.hypotheses_met = W.low_degree() == W.high_degree() && W.low_degree() >= 2 && W.alphabet() >= 3;
    if (!rep.hypotheses_met) rep.note = "requires W inside one component of degree >= 2 and d >= 3";
    rep.dim_image = image.dim();
  } else {
    rep.hypotheses_met = true;
    if (W.modulus() == 2) rep.note = "split-model (direct sum used for p = 2)";
    rep.dim_image = W.sum(image).dim();
  }
  rep.holds = 2 * rep.dim_image >= 3 * rep.dim_w;
  return rep;
}

LieSubspace random_subspace(const std::vector<NcPoly>& ambient_basis, int lo, int hi, int k,
                            std::uint64_t seed) {
  if (ambient_basis.empty()) throw std::invalid_argument("random_subspace: empty ambient basis");
  int p = ambient_basis[0].modulus(), d = ambient_basis[0].alphabet();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(0, p - 1);
  std::vector<NcPoly> rows;
  for (int i = 0; i < k; ++i) {
    NcPoly f(p, d);
    for (const auto& b : ambient_basis) f = f + b.scaled(coef(rng));
    rows.push_back(f);
  }
  return LieSubspace(p, d, lo, hi, rows);
}

}  // namespace pgl::freelie
