#pragma once

#include "pgrouplab/exact.hpp"
#include "pgrouplab/qcombin.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace pgl::bounds {

using qcombin::BoundReal;

// Gaussian-product bound on |S(G, u)| for a p-group with lower p-series
// dimensions g; v and w may be empty (all zeros). Exact; zero when some
// u_i < w_i.
Rational normalthm_bound(const std::vector<int>& g, const std::vector<int>& u, const std::vector<int>& v,
                         const std::vector<int>& w, int p);

// factor * p^exponent, kept in factored form so huge values stay comparable.
struct ScaledBound {
  BoundReal factor;
  Rational exponent;
  int p = 2;
  BoundReal log_p() const;
  // Throws std::overflow_error beyond double range.
  BoundReal value() const;
};

// D(p)^{n-1} prod_{i=2..n} p^{(u_i - u_{i-1}/2)(d_i - u_i)} with u_1 = 0; u lists u_2..u_n.
ScaledBound fnormal_bound(int p, int d, int n, const std::vector<int>& u);

struct GaussprodsReport {
  WideFloat sum;          // A_i(u_i)
  BoundReal log_sum;      // log_p A_i(u_i)
  BoundReal log_bound;    // log_p of the closed-form bound
  bool holds = false;     // log_sum <= log_bound certified
  bool hypotheses_met = false;
  bool index_in_range = false;  // 1 <= i <= n - 2, where the closed form is claimed
};

bool gaussprods_hypotheses(int d, int n);
GaussprodsReport gaussprods_Ai(int p, int d, int n, int i, int u_i, const Limits& limits = {});

struct Limit1Report {
  BoundReal bound;       // 1 + excess
  BoundReal log_excess;  // log_p of the excess term
  Rational exponent;     // d_{n-1} - d_n/4 + d^2 - 11/16
  bool hypotheses_met = false;
};
Limit1Report limit1_bound(int p, int d, int n);

struct Limit2Constants {
  BoundReal c1;
  Rational c2;
};
bool limit2_hypotheses(int d, int n);
Limit2Constants limit2_constants(int p, int d, int n);

struct Limit2Report {
  Limit2Constants constants;
  BoundReal x;        // c1 p^{c2}
  BoundReal bound_a;  // 1 + x
  BoundReal bound_b;  // (1 + x) / (1 - x); meaningless when vacuous
  bool b_vacuous = false;
};
Limit2Report limit2_bounds(int p, int d, int n);

struct DnInequalities {
  Rational first, second, third;  // left-hand sides
  bool first_holds = false;       // >= -15/2
  bool second_holds = false;      // >= -1
  bool third_holds = false;       // > 0
  bool first_two_claimed = false;  // (n >= 3, d >= 6) or (n >= 10, d >= 5)
  bool third_claimed = false;      // any of the four listed regions
};
DnInequalities dn_inequalities(int d, int n);

struct DnUpper {
  ExactInt dn;
  Rational rhs;  // (10/7) d^n / n
  bool holds = false;
};
DnUpper dn_upper(int d, int n);

struct GridRow {
  int p = 0, d = 0, n = 0;
  std::string profile, lhs, rhs;
  bool holds = false;
  std::string warnings;
};

std::vector<GridRow> limit1_grid(const std::vector<int>& ps, const std::vector<int>& ds, const std::vector<int>& ns);
std::vector<GridRow> limit2_grid(const std::vector<int>& ps, const std::vector<int>& ds, const std::vector<int>& ns);
std::vector<GridRow> gaussprods_grid(const std::vector<int>& ps, const std::vector<int>& ds, const std::vector<int>& ns,
                                     const Limits& limits = {});
std::vector<GridRow> dn_grid(const std::vector<int>& ds, const std::vector<int>& ns);
void write_csv(std::ostream& os, const std::vector<GridRow>& rows);

}  // namespace pgl::bounds
