#include "pgrouplab/walk.hpp"

#include "pgrouplab/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pgl::walk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr long long kMaxStates = 1'000'000;
constexpr int kMaxSteps = 100'000;

long long mod(long long a, long long p) {
  a %= p;
  return a < 0 ? a + p : a;
}

void check_run(const WalkSpec& spec, int n, const Limits& limits) {
  spec.validate();
  if (n < 0) throw std::invalid_argument("walk: negative step count");
  long long states = 1;
  for (int k = 0; k < spec.d && states <= kMaxStates; ++k) states *= spec.p;
  enforce_guard(states <= kMaxStates, limits, "walk state space p^d <= 10^6");
  enforce_guard(n <= kMaxSteps, limits, "walk step count <= 10^5");
}

// perm[x] = index of M x.
std::vector<int> index_permutation(const fplin::FpMat& M, int p, int d) {
  int N = 1;
  for (int k = 0; k < d; ++k) N *= p;
  std::vector<int> perm(N);
  for (int x = 0; x < N; ++x) perm[x] = encode(M.apply(decode(x, p, d)), p);
  return perm;
}

std::vector<int> radix_powers(int p, int d) {
  std::vector<int> pw(d);
  int v = 1;
  for (int k = 0; k < d; ++k) {
    pw[k] = v;
    v *= p;
  }
  return pw;
}

std::vector<double> cos_table(int p) {
  std::vector<double> c(p);
  for (int k = 0; k < p; ++k) c[k] = std::cos(kTwoPi * k / p);
  return c;
}

// hat P_step(z) for every character z.
std::vector<double> step_hat_table(const WalkSpec& spec) {
  const int N = spec.states();
  auto c = cos_table(spec.p);
  std::vector<double> out(N);
  for (int z = 0; z < N; ++z) {
    int rest = z;
    double s = 0;
    for (int k = 0; k < spec.d; ++k) {
      s += c[rest % spec.p];
      rest /= spec.p;
    }
    out[z] = 1.0 - spec.q + spec.q / spec.d * s;
  }
  return out;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Push-forward of P_k under x -> A x + g.
template <class T>
struct Evolver {
  int p, d, N;
  std::vector<int> perm, pw;
  T stay, move;
  std::vector<T> cur, next;

  explicit Evolver(const WalkSpec& spec)
      : p(spec.p), d(spec.d), N(spec.states()), perm(index_permutation(spec.A, p, d)), pw(radix_powers(p, d)),
        stay(T(1) - T(spec.q)), move(T(spec.q) / T(2 * d)), cur(N, T(0)), next(N) {
    cur[0] = T(1);
  }

  void advance() {
    std::fill(next.begin(), next.end(), T(0));
    for (int x = 0; x < N; ++x) {
      const T& m = cur[x];
      if (m == 0) continue;
      const int y = perm[x];
      next[y] += stay * m;
      const T mm = move * m;
      for (int k = 0; k < d; ++k) {
        const int digit = (y / pw[k]) % p;
        next[digit == p - 1 ? y - (p - 1) * pw[k] : y + pw[k]] += mm;
        next[digit == 0 ? y + (p - 1) * pw[k] : y - pw[k]] += mm;
      }
    }
    cur.swap(next);
  }
};

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

WalkSpec WalkSpec::scalar(int p, int d, int a, double q) {
  if (p < 2 || d < 1) throw std::invalid_argument("WalkSpec::scalar: need p >= 2 and d >= 1");
  return WalkSpec{p, d, fplin::FpMat::scalar(d, p, a), q};
}

int WalkSpec::states() const {
  long long s = 1;
  for (int k = 0; k < d; ++k) {
    s *= p;
    if (s > (1LL << 30)) throw ResourceGuardError("resource guard: walk state space does not fit an index");
  }
  return static_cast<int>(s);
}

void WalkSpec::validate() const {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("WalkSpec: p must be an odd prime");
  if (d < 1) throw std::invalid_argument("WalkSpec: d must be positive");
  if (A.rows() != d || A.cols() != d || A.modulus() != p)
    throw std::invalid_argument("WalkSpec: A must be a d x d matrix over F_p");
  if (!A.invertible()) throw std::invalid_argument("WalkSpec: A must be invertible");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("WalkSpec: q must lie in [0, 1]");
}

std::vector<int> decode(int index, int p, int d) {
  std::vector<int> x(d);
  for (int k = 0; k < d; ++k) {
    x[k] = index % p;
    index /= p;
  }
  return x;
}

int encode(const std::vector<int>& x, int p) {
  long long idx = 0;
  for (int k = static_cast<int>(x.size()) - 1; k >= 0; --k) idx = idx * p + mod(x[k], p);
  return static_cast<int>(idx);
}

double Dist::mass_deviation() const {
  double s = 0;
  for (double x : probs) s += x;
  return std::abs(s - 1.0);
}

double Dist::min_entry() const { return probs.empty() ? 0.0 : *std::min_element(probs.begin(), probs.end()); }

Dist point_mass(int p, int d) {
  WalkSpec s{p, d, fplin::FpMat::identity(d, p), 0.0};
  Dist out{p, d, std::vector<double>(s.states(), 0.0)};
  out.probs[0] = 1.0;
  return out;
}

Dist step_distribution(const WalkSpec& spec) {
  spec.validate();
  Dist out{spec.p, spec.d, std::vector<double>(spec.states(), 0.0)};
  out.probs[0] = 1.0 - spec.q;
  const double w = spec.q / (2.0 * spec.d);
  auto pw = radix_powers(spec.p, spec.d);
  for (int k = 0; k < spec.d; ++k) {
    out.probs[pw[k]] += w;
    out.probs[(spec.p - 1) * pw[k]] += w;
  }
  return out;
}

Dist evolve_exact(const WalkSpec& spec, int n, const Limits& limits) {
  check_run(spec, n, limits);
  Evolver<double> ev(spec);
  for (int step = 0; step < n; ++step) ev.advance();
  return Dist{spec.p, spec.d, std::move(ev.cur)};
}

std::vector<WideFloat> tv_series_wide(const WalkSpec& spec, int n_max, const Limits& limits) {
  check_run(spec, n_max, limits);
  enforce_guard(static_cast<long long>(spec.states()) * (n_max + 1) <= 20'000'000, limits,
                "wide-precision walk work p^d (n + 1) <= 2e7");
  Evolver<WideFloat> ev(spec);
  const WideFloat u = WideFloat(1) / ev.N;
  std::vector<WideFloat> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) ev.advance();
    WideFloat s = 0;
    for (const auto& x : ev.cur) s += abs(x - u);
    out.push_back(s / 2);
  }
  return out;
}

double tv_rounding_budget(const WalkSpec& spec, int n, double unit_roundoff) {
  return (static_cast<double>(n) * (2 * spec.d + 2) + spec.states()) * unit_roundoff;
}

std::vector<Rational> evolve_rational(const WalkSpec& spec, int n, const Limits& limits) {
  check_run(spec, n, limits);
  enforce_guard(spec.states() <= 729, limits, "rational walk oracle p^d <= 729");
  const int N = spec.states(), p = spec.p, d = spec.d;
  const Rational q(spec.q);
  const Rational stay = 1 - q, move = q / (2 * d);
  std::vector<Rational> cur(N), next(N);
  cur[0] = 1;
  for (int step = 0; step < n; ++step) {
    std::fill(next.begin(), next.end(), Rational(0));
    for (int x = 0; x < N; ++x) {
      if (cur[x] == 0) continue;
      auto y = spec.A.apply(decode(x, p, d));
      next[encode(y, p)] += stay * cur[x];
      for (int k = 0; k < d; ++k)
        for (int s : {1, p - 1}) {
          auto z = y;
          z[k] = (z[k] + s) % p;
          next[encode(z, p)] += move * cur[x];
        }
    }
    cur.swap(next);
  }
  return cur;
}

FourierTable fourier_of_walk(const WalkSpec& spec, int n, const Limits& limits) {
  check_run(spec, n, limits);
  const int N = spec.states();
  auto permT = index_permutation(spec.A.transpose(), spec.p, spec.d);
  auto hat = step_hat_table(spec);
  FourierTable out{spec.p, spec.d, std::vector<std::complex<double>>(N)};
  parallel_chunks(static_cast<std::size_t>(N), [&](std::size_t b, std::size_t e) {
    for (std::size_t y0 = b; y0 < e; ++y0) {
      int y = static_cast<int>(y0);
      double v = 1.0;
      for (int j = 0; j < n && v != 0.0; ++j) {
        v *= hat[y];
        y = permT[y];
      }
      out.values[y0] = v;
    }
  });
  return out;
}

FourierTable transform(const Dist& dist) {
  const int p = dist.p, d = dist.d;
  const int N = static_cast<int>(dist.probs.size());
  std::vector<std::complex<double>> roots(p);
  for (int k = 0; k < p; ++k) roots[k] = std::polar(1.0, kTwoPi * k / p);
  std::vector<std::complex<double>> cur(dist.probs.begin(), dist.probs.end()), next(N);
  std::vector<std::complex<double>> line(p);
  int stride = 1;
  for (int axis = 0; axis < d; ++axis) {
    for (int base = 0; base < N; ++base) {
      if ((base / stride) % p != 0) continue;
      for (int x = 0; x < p; ++x) line[x] = cur[base + x * stride];
      for (int y = 0; y < p; ++y) {
        std::complex<double> s = 0;
        int e = 0;
        for (int x = 0; x < p; ++x) {
          s += line[x] * roots[e];
          e += y;
          if (e >= p) e -= p;
        }
        next[base + y * stride] = s;
      }
    }
    cur.swap(next);
    stride *= p;
  }
  return FourierTable{p, d, std::move(cur)};
}

double tv_distance(const Dist& dist) {
  const double u = 1.0 / static_cast<double>(dist.probs.size());
  double s = 0;
  for (double x : dist.probs) s += std::abs(x - u);
  return 0.5 * s;
}

double fourier_energy(const FourierTable& f) {
  double s = 0;
  for (std::size_t y = 1; y < f.values.size(); ++y) s += std::norm(f.values[y]);
  return s;
}

double chi2_rhs(const FourierTable& f) { return fourier_energy(f) / 4.0; }

double d_n_expression(int p, long long b, double q, int n) {
  if (p < 2) throw std::invalid_argument("d_n_expression: p must be at least 2");
  b = mod(b, p);
  if (b == 0) throw std::invalid_argument("d_n_expression: b must be a unit mod p");
  if (n < 0) throw std::invalid_argument("d_n_expression: negative n");
  auto c = cos_table(p);
  double total = 0;
  for (long long y = 1; y < p; ++y) {
    double prod = 1;
    long long z = y;
    for (int j = 0; j < n && prod != 0.0; ++j) {
      const double f = 1.0 - q + q * c[z];
      prod *= f * f;
      z = z * b % p;
    }
    total += prod;
  }
  return total;
}

double ubthm_bound(int p, int d, const std::vector<long long>& eigenvalues, double q, int n) {
  if (static_cast<int>(eigenvalues.size()) != d) throw std::invalid_argument("ubthm_bound: need d eigenvalues");
  double s = 0;
  for (long long a : eigenvalues) s += d_n_expression(p, a, q / (8.0 * d), n);
  return std::expm1(s);
}

std::optional<std::vector<long long>> diagonal_eigenvalues(const fplin::FpMat& A) {
  const int d = A.rows(), p = A.modulus();
  std::vector<long long> ev;
  for (int lambda = 1; lambda < p; ++lambda) {
    const int nullity = d - (A + fplin::FpMat::scalar(d, p, p - lambda)).rank();
    ev.insert(ev.end(), nullity, lambda);
  }
  if (static_cast<int>(ev.size()) != d) return std::nullopt;
  return ev;
}

double ubthm_bound(const WalkSpec& spec, int n) {
  spec.validate();
  auto ev = diagonal_eigenvalues(spec.A);
  if (!ev) throw std::invalid_argument("ubthm_bound: A is not diagonalizable over F_p");
  return ubthm_bound(spec.p, spec.d, *ev, spec.q, n);
}

Schedule ubcor_schedule(int p, int d, double c) {
  if (!(c > 0)) throw std::invalid_argument("ubcor_schedule: c must be positive");
  if (p < 2 || d < 1) throw std::invalid_argument("ubcor_schedule: need p >= 2 and d >= 1");
  Schedule s;
  while ((1LL << s.t) < p) ++s.t;
  s.r = 4.0 * d * (std::log(static_cast<double>(s.t)) + std::log(static_cast<double>(d)) + c);
  s.n = static_cast<long long>(std::ceil(s.r * s.t));
  s.guarantee = 2.0 * std::exp(-c);
  return s;
}

int mersenne_prime(int t) {
  if (t < 2 || t > 30) throw std::invalid_argument("mersenne_prime: t must lie in [2, 30]");
  const long long p = (1LL << t) - 1;
  if (!is_prime(p)) throw std::invalid_argument("mersenne_prime: 2^t - 1 is not prime");
  return static_cast<int>(p);
}

PiGamma pi_gamma(int t, int d, int j) {
  const long long p = mersenne_prime(t);
  if (d < 1 || j < 0) throw std::invalid_argument("pi_gamma: need d >= 1 and j >= 0");
  const long long sj = mod((1LL << (j % t)) - 1, p);
  const long long tj = 1LL << (j % t);
  auto angle = [p](long long k) { return std::cos(kTwoPi * static_cast<double>(mod(k, p)) / static_cast<double>(p)); };
  PiGamma out{1.0, 1.0};
  long long two_a = 1;
  for (int a = 0; a < t; ++a) {
    out.pi *= (d - 1.0) / d + angle(two_a * sj) / d;
    out.gamma *= (d - 2.0) / d + angle(two_a) / d + angle(two_a * tj) / d;
    two_a = two_a * 2 % p;
  }
  return out;
}

double MeanStats::max_deviation() const {
  return std::max({eu_f.deviation(), eu_ffbar.deviation(), varu_f.deviation(), ep_f.deviation(),
                   ep_ffbar.deviation(), varp_f.deviation()});
}

MeanStats meanlem_stats(int t, int d, int r, const Limits& limits) {
  const int p = mersenne_prime(t);
  if (r < 0) throw std::invalid_argument("meanlem_stats: negative r");
  auto spec = WalkSpec::scalar(p, d, 2, 1.0);
  const long long n = static_cast<long long>(r) * t;
  enforce_guard(n <= kMaxSteps, limits, "walk step count <= 10^5");
  auto dist = evolve_exact(spec, static_cast<int>(n), limits);
  const int N = spec.states();

  std::vector<std::complex<double>> roots(p);
  for (int k = 0; k < p; ++k) roots[k] = std::polar(1.0, kTwoPi * k / p);
  std::complex<double> su = 0, sp = 0;
  double su2 = 0, sp2 = 0;
  for (int y = 0; y < N; ++y) {
    std::complex<double> f = 0;
    int rest = y;
    for (int i = 0; i < d; ++i) {
      long long e = rest % p;
      rest /= p;
      for (int j = 0; j < t; ++j) {
        f += roots[e];
        e = e * 2 % p;
      }
    }
    su += f;
    su2 += std::norm(f);
    sp += dist.probs[y] * f;
    sp2 += dist.probs[y] * std::norm(f);
  }
  su /= static_cast<double>(N);
  su2 /= static_cast<double>(N);

  const double dt = static_cast<double>(d) * t;
  const double pi1r = std::pow(pi_gamma(t, d, 1).pi, r);
  double sum_pi = 0, sum_gamma = 0;
  for (int j = 0; j < t; ++j) {
    auto pg = pi_gamma(t, d, j);
    sum_pi += std::pow(pg.pi, r);
    sum_gamma += std::pow(pg.gamma, r);
  }
  const double epff = dt * sum_pi + t * (static_cast<double>(d) * d - d) * sum_gamma;

  MeanStats m;
  m.eu_f = {0.0, su};
  m.eu_ffbar = {dt, su2};
  m.varu_f = {dt, su2 - std::norm(su)};
  m.ep_f = {dt * pi1r, sp};
  m.ep_ffbar = {epff, sp2};
  m.varp_f = {epff - dt * dt * pi1r * pi1r, sp2 - std::norm(sp)};
  return m;
}

ProductChecksReport appendixB_checks(int t, int d) {
  mersenne_prime(t);
  if (d < 1) throw std::invalid_argument("appendixB_checks: d must be positive");
  constexpr double kTol = 1e-12;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  ProductChecksReport rep;
  rep.t = t;
  rep.d = d;
  const double pi1 = pi_gamma(t, d, 1).pi;
  rep.pi1_pow_d = std::pow(std::abs(pi1), d);
  rep.b2_lower = std::exp(-3 * pi2) <= rep.pi1_pow_d;
  rep.b2_upper = rep.pi1_pow_d <= std::exp(-pi2 / 4);
  rep.b4 = true;
  for (int j = 1; j <= t - 1; ++j) {
    auto pg = pi_gamma(t, d, j);
    auto mirror = pi_gamma(t, d, t - j);
    if (std::abs(pg.pi) > std::abs(pi1) + kTol || std::abs(pg.gamma) > std::abs(pi1) + kTol) rep.b4 = false;
    rep.b7_max_deviation =
        std::max({rep.b7_max_deviation, std::abs(pg.pi - mirror.pi), std::abs(pg.gamma - mirror.gamma)});
  }
  const int lo = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(t)) - 1e-12));
  for (int j = std::max(lo, 1); 2 * j <= t; ++j) {
    auto pg = pi_gamma(t, d, j);
    rep.ratio_js.push_back(j);
    rep.pi_ratio.push_back(std::abs(pg.pi / (pi1 * pi1)));
    rep.gamma_ratio.push_back(std::abs(pg.gamma / (pi1 * pi1)));
    if (rep.pi_ratio.back() < 1.0) rep.pi_ratio_at_least_one = false;
  }
  return rep;
}

Dist monte_carlo(const WalkSpec& spec, int n, long long trials, std::uint64_t seed) {
  check_run(spec, n, Limits{});
  if (trials < 1) throw std::invalid_argument("monte_carlo: trials must be positive");
  const int N = spec.states(), p = spec.p, d = spec.d;
  auto perm = index_permutation(spec.A, p, d);
  auto pw = radix_powers(p, d);
  const std::uint64_t seed_key = splitmix(seed);
  std::vector<long long> counts(N, 0);
  std::mutex merge;
  parallel_chunks(static_cast<std::size_t>(trials), [&](std::size_t b, std::size_t e) {
    std::vector<long long> local(N, 0);
    for (std::size_t trial = b; trial < e; ++trial) {
      const std::uint64_t trial_key = splitmix(seed_key ^ splitmix(trial));
      int x = 0;
      for (int step = 0; step < n; ++step) {
        const std::uint64_t h1 = splitmix(trial_key + 2 * static_cast<std::uint64_t>(step));
        const std::uint64_t h2 = splitmix(trial_key + 2 * static_cast<std::uint64_t>(step) + 1);
        x = perm[x];
        const double u = static_cast<double>(h1 >> 11) * 0x1.0p-53;
        if (u < 1.0 - spec.q) continue;
        const auto pick = static_cast<int>(((h2 >> 32) * static_cast<std::uint64_t>(2 * d)) >> 32);
        const int k = pick / 2;
        const int digit = (x / pw[k]) % p;
        if (pick % 2 == 0)
          x = digit == p - 1 ? x - (p - 1) * pw[k] : x + pw[k];
        else
          x = digit == 0 ? x + (p - 1) * pw[k] : x - pw[k];
      }
      ++local[x];
    }
    std::lock_guard lock(merge);
    for (int i = 0; i < N; ++i) counts[i] += local[i];
  });
  Dist out{p, d, std::vector<double>(N)};
  for (int i = 0; i < N; ++i) out.probs[i] = static_cast<double>(counts[i]) / static_cast<double>(trials);
  return out;
}

std::vector<SeriesRow> time_series(const WalkSpec& spec, int n_max, const Limits& limits) {
  check_run(spec, n_max, limits);
  auto ev = diagonal_eigenvalues(spec.A);
  Evolver<double> evolver(spec);
  auto permT = index_permutation(spec.A.transpose(), spec.p, spec.d);
  auto hat = step_hat_table(spec);
  std::vector<double> fourier(evolver.N, 1.0), shifted(evolver.N);
  std::vector<SeriesRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) {
      evolver.advance();
      for (int y = 0; y < evolver.N; ++y) shifted[y] = hat[y] * fourier[permT[y]];
      fourier.swap(shifted);
    }
    SeriesRow row;
    row.n = n;
    row.tv = tv_distance(Dist{spec.p, spec.d, evolver.cur});
    double energy = 0;
    for (int y = 1; y < evolver.N; ++y) energy += fourier[y] * fourier[y];
    row.chi2 = energy / 4.0;
    row.ubthm = ev ? ubthm_bound(spec.p, spec.d, *ev, spec.q, n) : std::nan("");
    rows.push_back(row);
  }
  return rows;
}

void write_series_csv(std::ostream& os, const std::vector<SeriesRow>& rows) {
  os << "n,tv,chi2_rhs,ubthm_bound\n";
  for (const auto& r : rows)
    os << r.n << ',' << format_double(r.tv) << ',' << format_double(r.chi2) << ',' << format_double(r.ubthm) << '\n';
}

}  // namespace pgl::walk
