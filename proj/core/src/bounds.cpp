#include "pgrouplab/bounds.hpp"

#include "pgrouplab/freelie.hpp"
#include "pgrouplab/parallel.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace pgl::bounds {

namespace {

constexpr double kLogSlack = 1e-12;

void require_prime(int p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
}

double to_double(const Rational& r) { return static_cast<double>(r); }

BoundReal log_p_of(const BoundReal& x, int p) {
  if (!(x.lo() > 0)) throw std::domain_error("log of a nonpositive enclosure");
  double lp = std::log(static_cast<double>(p));
  double lo = std::log(x.lo()) / lp, hi = std::log(x.hi()) / lp;
  return {0.5 * (lo + hi), 0.5 * (hi - lo) + kLogSlack * (std::abs(lo) + std::abs(hi) + 1.0)};
}

BoundReal exact_real(const Rational& r) {
  double v = to_double(r);
  return {v, std::abs(v) * std::numeric_limits<double>::epsilon()};
}

BoundReal exp_p(const BoundReal& log_value, int p) {
  double lp = std::log(static_cast<double>(p));
  double lo = std::exp(log_value.lo() * lp), hi = std::exp(log_value.hi() * lp);
  double mid = 0.5 * (lo + hi);
  return {mid, 0.5 * (hi - lo) + kLogSlack * hi};
}

long long dn(int d, int i) { return freelie::dn_dim(d, i).convert_to<long long>(); }

std::string fmt_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string fmt_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

void sort_rows(std::vector<GridRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const GridRow& a, const GridRow& b) {
    return std::tie(a.p, a.d, a.n, a.profile) < std::tie(b.p, b.d, b.n, b.profile);
  });
}

}  // namespace

Rational normalthm_bound(const std::vector<int>& g, const std::vector<int>& u, const std::vector<int>& v,
                         const std::vector<int>& w, int p) {
  require_prime(p);
  std::size_t n = g.size();
  if (u.size() != n || (!v.empty() && v.size() != n) || (!w.empty() && w.size() != n))
    throw std::invalid_argument("normalthm_bound: profile lengths differ");
  if (n == 0) throw std::invalid_argument("normalthm_bound: empty dimension vector");
  for (std::size_t i = 0; i < n; ++i)
    if (u[i] < 0 || u[i] > g[i]) throw std::invalid_argument("normalthm_bound: need 0 <= u_i <= g_i");
  auto at = [](const std::vector<int>& x, std::size_t i) { return x.empty() ? 0 : x[i]; };
  ExactInt P = p;
  Rational value = Rational(qcombin::gauss_binom(g[0], u[0], P));
  long long partial = u[0] - at(v, 0);
  for (std::size_t i = 1; i < n && value != 0; ++i) {
    int top = g[i] - at(w, i), bottom = u[i] - at(w, i);
    if (top < 0 || bottom < 0) return Rational(0);
    value *= Rational(qcombin::gauss_binom(top, bottom, P));
    long long e = static_cast<long long>(g[i] - u[i]) * partial;
    ExactInt pe = ipow(P, static_cast<unsigned>(std::llabs(e)));
    value *= e >= 0 ? Rational(pe) : Rational(ExactInt(1), pe);
    partial += u[i] - at(v, i);
  }
  return value;
}

BoundReal ScaledBound::log_p() const { return log_p_of(factor, p) + exact_real(exponent); }

BoundReal ScaledBound::value() const {
  double e = to_double(exponent);
  if (e * std::log10(static_cast<double>(p)) > 300.0) throw std::overflow_error("ScaledBound: value exceeds double range");
  return factor * qcombin::power(static_cast<double>(p), e);
}

ScaledBound fnormal_bound(int p, int d, int n, const std::vector<int>& u) {
  require_prime(p);
  if (d < 3 || n < 3) throw std::invalid_argument("fnormal_bound: requires d >= 3 and n >= 3");
  if (static_cast<int>(u.size()) != n - 1) throw std::invalid_argument("fnormal_bound: u must list u_2..u_n");
  Rational exponent = 0;
  int prev = 0;
  for (int i = 2; i <= n; ++i) {
    int ui = u[i - 2];
    long long di = dn(d, i);
    if (ui < 0 || ui > di) throw std::invalid_argument("fnormal_bound: need 0 <= u_i <= d_i");
    exponent += (Rational(ui) - Rational(prev, 2)) * (di - ui);
    prev = ui;
  }
  return {qcombin::power(qcombin::d_series(p), n - 1), exponent, p};
}

bool gaussprods_hypotheses(int d, int n) { return (n >= 3 && d >= 6) || (n >= 10 && d >= 5); }

GaussprodsReport gaussprods_Ai(int p, int d, int n, int i, int u_i, const Limits& limits) {
  require_prime(p);
  if (n < 2 || d < 1) throw std::invalid_argument("gaussprods_Ai: requires n >= 2 and d >= 1");
  if (i < 1 || i > n - 1) throw std::invalid_argument("gaussprods_Ai: requires 1 <= i <= n - 1");
  std::vector<long long> dims(n + 1, 0);
  for (int j = 1; j <= n; ++j) dims[j] = dn(d, j);
  if (u_i < 0 || u_i > dims[i]) throw std::invalid_argument("gaussprods_Ai: need 0 <= u_i <= d_i");
  double work = 0;
  for (int j = i; j < n; ++j) work += static_cast<double>(dims[j] + 1) * static_cast<double>(dims[j + 1] + 1);
  enforce_guard(work <= 2e7, limits, "A_i summation exceeds 2*10^7 terms");

  auto lower = [n](int j) { return j == n ? 2 : (j == n - 1 ? 1 : 0); };
  const WideFloat ln_p = log(WideFloat(p));
  // term(x, y) = p^{-(x - D)(x - y/2)} with D = d_{j+1}
  auto term = [&](long long x, long long y, long long D) {
    WideFloat e = -WideFloat(x - D) * (WideFloat(x) - WideFloat(y) / 2);
    return exp(e * ln_p);
  };
  std::vector<WideFloat> next(static_cast<std::size_t>(dims[n] + 1), WideFloat(0));
  for (long long x = lower(n); x <= dims[n]; ++x) next[x] = 1;
  for (int j = n - 1; j > i; --j) {
    std::vector<WideFloat> cur(static_cast<std::size_t>(dims[j] + 1), WideFloat(0));
    long long D = dims[j + 1];
    for (long long x = lower(j + 1); x <= D; ++x) {
      WideFloat t = term(x, lower(j), D) * next[x];
      const WideFloat step = exp(WideFloat(x - D) / 2 * ln_p);
      for (long long y = lower(j); y <= dims[j]; ++y, t *= step) cur[y] += t;
    }
    next = std::move(cur);
  }
  GaussprodsReport r;
  r.sum = 0;
  for (long long x = lower(i + 1); x <= dims[i + 1]; ++x) r.sum += term(x, u_i, dims[i + 1]) * next[x];
  r.hypotheses_met = gaussprods_hypotheses(d, n);
  r.index_in_range = i <= n - 2;
  if (r.sum <= 0) throw std::logic_error("gaussprods_Ai: empty summation");
  double ls = static_cast<double>(log(r.sum) / ln_p);
  r.log_sum = {ls, kLogSlack * (std::abs(ls) + 1.0)};
  double pd = static_cast<double>(p);
  Rational tail = Rational(-15, 16) + Rational(dims[n] * dims[n], 4) + dims[n - 1] - Rational(dims[n], 4) -
                  Rational(static_cast<long long>(u_i) * (dims[i + 1] - 1), 2);
  r.log_bound = log_p_of(qcombin::c_series(std::pow(pd, 15.0 / 16.0)), p) +
                BoundReal{static_cast<double>(n - i - 1), 0.0} * log_p_of(qcombin::c_series(pd), p) +
                exact_real(tail);
  r.holds = qcombin::certainly_le(r.log_sum, r.log_bound);
  return r;
}

Limit1Report limit1_bound(int p, int d, int n) {
  require_prime(p);
  if (n < 2 || d < 1) throw std::invalid_argument("limit1_bound: requires n >= 2 and d >= 1");
  Limit1Report r;
  r.hypotheses_met = gaussprods_hypotheses(d, n);
  long long dn1 = dn(d, n - 1), dnn = dn(d, n);
  r.exponent = Rational(dn1) - Rational(dnn, 4) + static_cast<long long>(d) * d - Rational(11, 16);
  double pd = static_cast<double>(p);
  BoundReal per_level = log_p_of(qcombin::c_series(pd) * qcombin::d_series(pd), p);
  r.log_excess = log_p_of(qcombin::c_series(std::pow(pd, 15.0 / 16.0)), p) +
                 BoundReal{static_cast<double>(n - 2), 0.0} * per_level + exact_real(r.exponent);
  if (r.log_excess.hi() * std::log10(pd) > 300.0)
    r.bound = {std::numeric_limits<double>::infinity(), 0.0};
  else
    r.bound = BoundReal{1.0, 0.0} + exp_p(r.log_excess, p);
  return r;
}

bool limit2_hypotheses(int d, int n) { return (n == 2 && d >= 10) || (n >= 3 && d >= 3); }

Limit2Constants limit2_constants(int p, int d, int n) {
  require_prime(p);
  if (!limit2_hypotheses(d, n))
    throw std::invalid_argument("limit2_constants: requires (n = 2, d >= 10) or (n >= 3, d >= 3)");
  double pd = static_cast<double>(p);
  BoundReal C = qcombin::c_series(pd), D = qcombin::d_series(pd);
  Limit2Constants k;
  if (n == 2) {
    k.c1 = qcombin::power(C, 5) * qcombin::power(D, 4) * qcombin::power(pd, 17.0 / 4.0);
    k.c2 = -d;
  } else {
    k.c1 = qcombin::power(C, 2) * D * qcombin::power(pd, 3.0 / 4.0);
    k.c2 = Rational(static_cast<long long>(d) * d) - Rational(dn(d, n), 2);
  }
  return k;
}

Limit2Report limit2_bounds(int p, int d, int n) {
  Limit2Report r;
  r.constants = limit2_constants(p, d, n);
  BoundReal log_x = log_p_of(r.constants.c1, p) + exact_real(r.constants.c2);
  if (log_x.hi() * std::log10(static_cast<double>(p)) > 300.0) {
    double inf = std::numeric_limits<double>::infinity();
    r.x = r.bound_a = r.bound_b = {inf, 0.0};
    r.b_vacuous = true;
    return r;
  }
  r.x = exp_p(log_x, p);
  r.bound_a = BoundReal{1.0, 0.0} + r.x;
  r.b_vacuous = !(r.x.hi() < 1.0);
  if (!r.b_vacuous) r.bound_b = r.bound_a / (BoundReal{1.0, 0.0} + BoundReal{-r.x.value, r.x.abs_error});
  else r.bound_b = {std::numeric_limits<double>::infinity(), 0.0};
  return r;
}

DnInequalities dn_inequalities(int d, int n) {
  if (n < 3 || d < 1) throw std::invalid_argument("dn_inequalities: requires n >= 3 and d >= 1");
  Rational a = dn(d, n), b = dn(d, n - 1), c = dn(d, n - 2);
  DnInequalities r;
  r.first = a - 4 * b - 2 * c;
  r.second = a - 2 * b - Rational(2, n - 2) * c;
  r.third = a - 4 * b - 4 * Rational(static_cast<long long>(d) * d) + Rational(11, 16);
  r.first_holds = r.first >= Rational(-15, 2);
  r.second_holds = r.second >= -1;
  r.third_holds = r.third > 0;
  r.first_two_claimed = gaussprods_hypotheses(d, n);
  r.third_claimed = (n >= 10 && d >= 5) || (n >= 5 && d >= 6) || (n >= 4 && d >= 8) || (n >= 3 && d >= 17);
  return r;
}

DnUpper dn_upper(int d, int n) {
  if (d < 5 || n < 1) throw std::invalid_argument("dn_upper: requires d >= 5 and n >= 1");
  DnUpper r;
  r.dn = freelie::dn_dim(d, n);
  r.rhs = Rational(10 * ipow(ExactInt(d), static_cast<unsigned>(n)), ExactInt(7 * n));
  r.holds = Rational(r.dn) <= r.rhs;
  return r;
}

std::vector<GridRow> limit1_grid(const std::vector<int>& ps, const std::vector<int>& ds, const std::vector<int>& ns) {
  std::vector<GridRow> rows;
  for (int p : ps)
    for (int d : ds)
      for (int n : ns) {
        auto r = limit1_bound(p, d, n);
        GridRow row{p, d, n, "", "1", fmt_double(r.bound.value), qcombin::certainly_le({1.0, 0.0}, r.bound), ""};
        if (!r.hypotheses_met) row.warnings = "warn: outside hypotheses";
        rows.push_back(row);
      }
  sort_rows(rows);
  return rows;
}

std::vector<GridRow> limit2_grid(const std::vector<int>& ps, const std::vector<int>& ds, const std::vector<int>& ns) {
  std::vector<GridRow> rows;
  for (int p : ps)
    for (int d : ds)
      for (int n : ns) {
        if (!limit2_hypotheses(d, n)) {
          rows.push_back({p, d, n, "", "", "", false, "warn: outside hypotheses"});
          continue;
        }
        auto r = limit2_bounds(p, d, n);
        GridRow row{p, d, n, "", fmt_double(r.bound_a.value), fmt_double(r.bound_b.value), !r.b_vacuous, ""};
        if (r.b_vacuous) row.warnings = "warn: part b vacuous";
        rows.push_back(row);
      }
  sort_rows(rows);
  return rows;
}

std::vector<GridRow> gaussprods_grid(const std::vector<int>& ps, const std::vector<int>& ds, const std::vector<int>& ns,
                                     const Limits& limits) {
  struct Job {
    int p, d, n, i, u;
  };
  std::vector<Job> jobs;
  for (int p : ps)
    for (int d : ds)
      for (int n : ns)
        for (int i = 1; i <= n - 2; ++i)
          for (int u = 0; u <= dn(d, i); ++u) jobs.push_back({p, d, n, i, u});
  std::vector<GridRow> rows(jobs.size());
  parallel_chunks(jobs.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const auto& j = jobs[k];
      auto r = gaussprods_Ai(j.p, j.d, j.n, j.i, j.u, limits);
      rows[k] = {j.p, j.d, j.n, "i=" + std::to_string(j.i) + ";u=" + std::to_string(j.u), fmt_double(r.log_sum.value),
                 fmt_double(r.log_bound.value), r.holds, r.hypotheses_met ? "" : "warn: outside hypotheses"};
    }
  });
  sort_rows(rows);
  return rows;
}

std::vector<GridRow> dn_grid(const std::vector<int>& ds, const std::vector<int>& ns) {
  std::vector<GridRow> rows;
  for (int d : ds)
    for (int n : ns) {
      auto r = dn_inequalities(d, n);
      auto warn = [](bool claimed) { return claimed ? std::string() : std::string("warn: outside claimed region"); };
      rows.push_back({0, d, n, "first", fmt_rational(r.first), "-15/2", r.first_holds, warn(r.first_two_claimed)});
      rows.push_back({0, d, n, "second", fmt_rational(r.second), "-1", r.second_holds, warn(r.first_two_claimed)});
      rows.push_back({0, d, n, "third", fmt_rational(r.third), "0", r.third_holds, warn(r.third_claimed)});
    }
  sort_rows(rows);
  return rows;
}

void write_csv(std::ostream& os, const std::vector<GridRow>& rows) {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  os << "p,d,n,profile,lhs,rhs,holds,warnings\n";
  for (const auto& r : rows)
    os << r.p << ',' << r.d << ',' << r.n << ',' << field(r.profile) << ',' << field(r.lhs) << ',' << field(r.rhs)
       << ',' << (r.holds ? "true" : "false") << ',' << field(r.warnings) << '\n';
}

}  // namespace pgl::bounds
