#include "pgrouplab/qcombin.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pgl::qcombin {

namespace {

constexpr double kRoundRel = 4.0 * DBL_EPSILON;
constexpr double kTranscendentalRel = 1e-12;

BoundReal from_interval(double lo, double hi) {
  double mid = 0.5 * (lo + hi);
  double rad = 0.5 * (hi - lo) + kRoundRel * std::max(std::abs(lo), std::abs(hi));
  return {mid, rad};
}

}  // namespace

BoundReal operator+(const BoundReal& a, const BoundReal& b) {
  double v = a.value + b.value;
  return {v, a.abs_error + b.abs_error + kRoundRel * std::abs(v)};
}

BoundReal operator*(const BoundReal& a, const BoundReal& b) {
  double v = a.value * b.value;
  double e = std::abs(a.value) * b.abs_error + std::abs(b.value) * a.abs_error + a.abs_error * b.abs_error;
  return {v, e + kRoundRel * std::abs(v)};
}

BoundReal operator/(const BoundReal& a, const BoundReal& b) {
  if (b.lo() <= 0.0 && b.hi() >= 0.0) throw std::domain_error("BoundReal division by an enclosure of zero");
  double c[4] = {a.lo() / b.lo(), a.lo() / b.hi(), a.hi() / b.lo(), a.hi() / b.hi()};
  return from_interval(*std::min_element(c, c + 4), *std::max_element(c, c + 4));
}

BoundReal from_exact(const ExactInt& x) {
  double v = static_cast<double>(x);
  if (boost::multiprecision::abs(x) < (ExactInt(1) << 53)) return {v, 0.0};
  return {v, std::abs(v) * DBL_EPSILON};
}

BoundReal power(double base, double exponent) {
  double v = std::pow(base, exponent);
  return {v, kTranscendentalRel * v};
}

BoundReal power(const BoundReal& a, int k) {
  if (k < 0) throw std::invalid_argument("power: negative integer exponent");
  BoundReal r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

bool certainly_le(const BoundReal& a, const BoundReal& b) { return a.hi() <= b.lo(); }
bool certainly_lt(const BoundReal& a, const BoundReal& b) { return a.hi() < b.lo(); }

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw std::invalid_argument("partition with a negative part");
    if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
  }
}

int Partition::size() const {
  int s = 0;
  for (int x : parts_) s += x;
  return s;
}

Partition Partition::conjugate() const {
  std::vector<int> c(parts_.empty() ? 0 : parts_[0], 0);
  for (int x : parts_)
    for (int j = 0; j < x; ++j) ++c[j];
  return Partition(std::move(c));
}

bool Partition::contained_in(const Partition& other) const {
  if (length() > other.length()) return false;
  for (int i = 0; i < length(); ++i)
    if (parts_[i] > other.parts_[i]) return false;
  return true;
}

int Partition::multiplicity(int v) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), v));
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int cap) {
    if (rest == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int x = std::min(rest, cap); x >= 1; --x) {
      cur.push_back(x);
      rec(rest - x, x);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::vector<Partition> subpartitions(const Partition& outer) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int i, int cap) {
    out.emplace_back(cur);
    if (i >= outer.length()) return;
    for (int x = 1; x <= std::min(cap, outer[i]); ++x) {
      cur.push_back(x);
      rec(i + 1, x);
      cur.pop_back();
    }
  };
  rec(0, outer.empty() ? 0 : outer[0]);
  return out;
}

ExactInt gauss_binom(int n, int k, const ExactInt& q) {
  if (q < 2) throw std::invalid_argument("gauss_binom: q must be at least 2");
  if (n < 0) throw std::invalid_argument("gauss_binom: negative n");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  ExactInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= ipow(q, n - i) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  ExactInt quot, rem;
  boost::multiprecision::divide_qr(num, den, quot, rem);
  if (rem != 0) throw std::logic_error("gauss_binom: inexact division");
  return quot;
}

ExactInt galois_number(int n, const ExactInt& q) {
  ExactInt total = 0;
  for (int k = 0; k <= n; ++k) total += gauss_binom(n, k, q);
  return total;
}

ExactInt s_n(int n, const ExactInt& q) {
  if (q < 2) throw std::invalid_argument("s_n: q must be at least 2");
  ExactInt total = 0;
  for (int k = 0; k <= n; ++k) total += ipow(q, k * (n - k));
  return total;
}

BoundReal c_series(double x, double target_abs_error) {
  if (!(x > 1.0)) throw std::domain_error("c_series diverges for x <= 1");
  if (!(target_abs_error > 0.0)) throw std::invalid_argument("c_series: target error must be positive");
  double sum = 1.0;
  int r = 1;
  for (;; ++r) {
    double term = 2.0 * std::pow(x, -static_cast<double>(r) * r);
    double ratio = std::pow(x, -(2.0 * r + 1.0));
    double tail = term / (1.0 - ratio);
    if (term < target_abs_error / 4 && tail <= target_abs_error) {
      double err = tail + (r + 1) * kRoundRel * sum + kTranscendentalRel * (sum - 1.0);
      return {sum + 0.5 * tail, 0.5 * tail + err};
    }
    sum += term;
  }
}

BoundReal d_series(double x, double target_abs_error) {
  if (!(x > 1.0)) throw std::domain_error("d_series diverges for x <= 1");
  if (!(target_abs_error > 0.0)) throw std::invalid_argument("d_series: target error must be positive");
  double prod = 1.0;
  double inv = 1.0 / x;
  for (int j = 1;; ++j) {
    double xj = std::pow(x, -static_cast<double>(j));
    // Remaining log-product from index j onward.
    double tail_log = xj / ((1.0 - inv) * (1.0 - xj));
    double tail = prod * std::expm1(tail_log);
    if (xj < target_abs_error / 4 && tail <= target_abs_error) {
      double err = tail + (j + 1) * kRoundRel * prod + kTranscendentalRel * (prod - 1.0);
      return {prod + 0.5 * tail, 0.5 * tail + err};
    }
    prod /= (1.0 - xj);
  }
}

QestsReport check_qests(int n, long long q) {
  if (n < 1) throw std::invalid_argument("check_qests: n must be positive");
  ExactInt Q = q;
  double qd = static_cast<double>(q);
  BoundReal C = c_series(qd), D = d_series(qd);
  QestsReport rep;

  rep.coefficient_bound = true;
  for (int k = 0; k <= n; ++k) {
    BoundReal lhs = from_exact(gauss_binom(n, k, Q));
    BoundReal rhs = D * power(qd, static_cast<double>(k) * (n - k));
    rep.coefficient_bound = rep.coefficient_bound && certainly_le(lhs, rhs);
  }

  BoundReal G = from_exact(galois_number(n, Q));
  BoundReal factor = BoundReal{2.0, 0.0} + BoundReal{-4.5, 0.0} * power(qd, (1.0 - n) / 2.0);
  BoundReal lower = D * power(qd, n * n / 4.0 - 0.25) * factor;
  rep.galois_lower = certainly_le(lower, G);

  ExactInt S = s_n(n, Q);
  BoundReal SD = from_exact(S) * D;
  bool s_below_c;
  if (n % 2 == 0) {
    // q^{-n^2/4} S_n is the partial sum of C(q) over |r| <= n/2; the omitted
    // terms are positive, so an exact comparison with that partial sum suffices.
    Rational partial = 1;
    for (int r = 1; r <= n / 2; ++r) partial += Rational(2, ipow(Q, r * r));
    s_below_c = Rational(S) <= partial * Rational(ipow(Q, n * n / 4));
  } else {
    s_below_c = certainly_le(from_exact(S), C * power(qd, n * n / 4.0));
  }
  rep.galois_upper = certainly_le(G, SD) && s_below_c;
  return rep;
}

PolyboundReport polybound_check(double a, double b, double c, int t, int u, double q) {
  if (!(a > 0.0)) throw std::invalid_argument("polybound_check: a must be positive");
  if (t > u) throw std::invalid_argument("polybound_check: empty range");
  if (!(q > 1.0)) throw std::invalid_argument("polybound_check: q must exceed 1");
  auto f = [&](double x) { return -a * x * x + b * x + c; };
  PolyboundReport rep;
  rep.argmax = std::clamp(b / (2.0 * a), static_cast<double>(t), static_cast<double>(u));
  BoundReal sum{0.0, 0.0};
  for (int r = t; r <= u; ++r) sum = sum + power(q, f(r));
  rep.sum = sum.value;
  BoundReal rhs = c_series(std::pow(q, a)) * power(q, f(rep.argmax));
  rep.bound = rhs.value;
  rep.holds = certainly_le(sum, rhs);
  return rep;
}

QuadboundReport quadbound_check(const std::vector<int>& alphas, double eps) {
  if (alphas.empty()) throw std::invalid_argument("quadbound_check: empty list");
  if (eps < 0) throw std::invalid_argument("quadbound_check: eps must be nonnegative");
  long long n = 0, sq = 0;
  for (int a : alphas) {
    if (a <= 0) throw std::invalid_argument("quadbound_check: parts must be positive");
    n += a;
    sq += static_cast<long long>(a) * a;
  }
  long long r = static_cast<long long>(alphas.size());
  QuadboundReport rep;
  rep.sum_squares = sq;
  rep.first_rhs = (n - r + 1) * (n - r + 1) + (r - 1);
  rep.first_holds = sq <= rep.first_rhs;
  rep.second_applies = n >= eps + 1 && r >= 2;
  if (rep.second_applies)
    rep.second_holds = sq + eps * r <= static_cast<double>((n - 1) * (n - 1) + 1) + 2 * eps;
  return rep;
}

}  // namespace pgl::qcombin
