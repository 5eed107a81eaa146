#pragma once

#include "pgrouplab/exact.hpp"
#include "pgrouplab/fplin.hpp"

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

namespace pgl::walk {

// X_{k+1} = A X_k + g_k on C_p^d with P(0) = 1 - q and P(e_k) = P(-e_k) = q / 2d.
struct WalkSpec {
  int p = 3;
  int d = 1;
  fplin::FpMat A = fplin::FpMat::identity(1, 3);
  double q = 1.0;

  static WalkSpec scalar(int p, int d, int a, double q);
  int states() const;  // p^d
  void validate() const;
};

// Mixed-radix base p: index = x_0 + x_1 p + ... + x_{d-1} p^{d-1}.
std::vector<int> decode(int index, int p, int d);
int encode(const std::vector<int>& x, int p);

struct Dist {
  int p = 3, d = 1;
  std::vector<double> probs;
  double mass_deviation() const;  // |sum - 1|
  double min_entry() const;
};

struct FourierTable {
  int p = 3, d = 1;
  std::vector<std::complex<double>> values;  // hat P(y) = sum_x P(x) w^{y.x}, w = exp(2 pi i / p)
};

Dist point_mass(int p, int d);
Dist step_distribution(const WalkSpec& spec);
Dist evolve_exact(const WalkSpec& spec, int n, const Limits& limits = {});
// Slow oracle over exact rationals; q is taken as its exact binary value.
std::vector<Rational> evolve_rational(const WalkSpec& spec, int n, const Limits& limits = {});

// TV to uniform for n = 0..n_max from a 50-digit evolution.
std::vector<WideFloat> tv_series_wide(const WalkSpec& spec, int n_max, const Limits& limits = {});
// Bound on the rounding error of a TV value computed at the given unit roundoff.
double tv_rounding_budget(const WalkSpec& spec, int n, double unit_roundoff = std::numeric_limits<double>::epsilon());

FourierTable fourier_of_walk(const WalkSpec& spec, int n, const Limits& limits = {});
FourierTable transform(const Dist& dist);

double tv_distance(const Dist& dist);
// Sum over nontrivial characters of |hat P(y)|^2.
double fourier_energy(const FourierTable& f);
// Fourier upper bound on TV^2: fourier_energy / 4.
double chi2_rhs(const FourierTable& f);

double d_n_expression(int p, long long b, double q, int n);
// exp(sum_i D_n(a_i, q / 8d)) - 1
double ubthm_bound(int p, int d, const std::vector<long long>& eigenvalues, double q, int n);
// Eigenvalues with multiplicity when A is diagonalizable over F_p.
std::optional<std::vector<long long>> diagonal_eigenvalues(const fplin::FpMat& A);
double ubthm_bound(const WalkSpec& spec, int n);

struct Schedule {
  int t = 0;
  double r = 0;
  long long n = 0;  // ceil(r t)
  double guarantee = 0;  // 2 e^{-c}, bound on TV^2
};
Schedule ubcor_schedule(int p, int d, double c);

// 2^t - 1 must be prime.
int mersenne_prime(int t);
struct PiGamma {
  double pi = 0, gamma = 0;
};
PiGamma pi_gamma(int t, int d, int j);

struct Stat {
  std::complex<double> closed_form, enumerated;
  double deviation() const { return std::abs(closed_form - enumerated); }
};
struct MeanStats {
  Stat eu_f, eu_ffbar, varu_f, ep_f, ep_ffbar, varp_f;
  double max_deviation() const;
};
// Chain with p = 2^t - 1, A = 2I, q = 1 after n = r t steps.
MeanStats meanlem_stats(int t, int d, int r, const Limits& limits = {});

struct ProductChecksReport {
  int t = 0, d = 0;
  double pi1_pow_d = 0;
  bool b2_lower = false, b2_upper = false;
  bool b4 = false;              // |Pi_j| <= |Pi_1| and |Gamma_j| <= |Pi_1| for 1 <= j <= t - 1
  double b7_max_deviation = 0;  // max over j of |Pi_j - Pi_{t-j}| and |Gamma_j - Gamma_{t-j}|
  std::vector<int> ratio_js;    // t^{1/3} <= j <= t/2
  std::vector<double> pi_ratio, gamma_ratio;  // |Pi_j / Pi_1^2|, |Gamma_j / Pi_1^2|
  bool pi_ratio_at_least_one = true;
};
ProductChecksReport appendixB_checks(int t, int d);

Dist monte_carlo(const WalkSpec& spec, int n, long long trials, std::uint64_t seed);

struct SeriesRow {
  int n = 0;
  double tv = 0, chi2 = 0, ubthm = 0;
};
std::vector<SeriesRow> time_series(const WalkSpec& spec, int n_max, const Limits& limits = {});
void write_series_csv(std::ostream& os, const std::vector<SeriesRow>& rows);

}  // namespace pgl::walk
