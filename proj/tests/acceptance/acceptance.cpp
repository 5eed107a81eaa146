#include "pgrouplab/bounds.hpp"
#include "pgrouplab/fplin.hpp"
#include "pgrouplab/freelie.hpp"
#include "pgrouplab/groups.hpp"
#include "pgrouplab/qcombin.hpp"
#include "pgrouplab/submod.hpp"
#include "pgrouplab/walk.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace pgl;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  long long checked = 0;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

bool run_criterion(int id, const std::string& title, double budget_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail << "exception: " << e.what() << "; ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_seconds) {
    out.pass = false;
    out.detail << "over time budget of " << budget_seconds << " s; ";
  }
  std::printf("%s criterion %d: %s (%lld checks, %.1f s) %s\n", out.pass ? "PASS" : "FAIL", id, title.c_str(),
              out.checked, secs, out.detail.str().c_str());
  std::fflush(stdout);
  return out.pass;
}

void census_rows(Outcome& out) {
  const int rows[][4] = {{2, 3, 3, 5}, {3, 3, 0, 5}, {5, 3, 0, 5}, {2, 4, 9, 14}};
  for (const auto& r : rows) {
    auto c = groups::census(r[0], r[1]);
    out.expect(c.aut_p_groups == r[2] && c.total == r[3],
               std::to_string(r[0]) + "^" + std::to_string(r[1]) + " gave " + std::to_string(c.aut_p_groups) + "/" +
                   std::to_string(c.total));
    out.detail << r[0] << "^" << r[1] << "=" << c.aut_p_groups << "/" << c.total << " ";
  }
}

void submodule_formula(Outcome& out) {
  for (int p : {2, 3})
    for (int n = 1; n <= 5; ++n)
      for (const auto& alpha : qcombin::partitions_of(n))
        for (const auto& beta : qcombin::subpartitions(alpha))
          out.expect(submod::submodule_count(alpha, beta, p) ==
                         submod::abelian_subgroup_oracle(p, alpha.conjugate(), beta.conjugate()),
                     "alpha=" + alpha.to_string() + " beta=" + beta.to_string() + " p=" + std::to_string(p));
}

void structural_count(Outcome& out) {
  for (int p : {2, 3})
    for (int m = 1; m <= 3; ++m)
      fplin::for_each_gl(m, p, [&](const fplin::FpMat& g) {
        out.expect(submod::structural_sm(submod::decompose(g)) == fplin::invariant_subspace_count(g), g.to_string());
      });
}

void submodule_bounds(Outcome& out) {
  for (int p : {2, 3})
    for (int m = 1; m <= 3; ++m)
      fplin::for_each_gl(m, p, [&](const fplin::FpMat& g) {
        if (g.is_scalar()) return;
        auto r = submod::sm_value_and_bound(g);
        out.expect(!r.scalar_case && r.holds, "general bound at " + g.to_string());
      });
  for (int p : {3, 5})
    for (int d : {2, 3}) {
      const int m = d + d * (d - 1) / 2;
      const auto rhs = submod::stronger_bound(m, p);
      const auto id = fplin::FpMat::identity(d, p);
      fplin::for_each_gl(d, p, [&](const fplin::FpMat& g) {
        if (g == id) return;
        auto sm = submod::structural_sm(submod::decompose(fplin::wedge_matrix(g)));
        out.expect(qcombin::certainly_le(submod::log_base(sm, p), rhs), "wedge bound at " + g.to_string());
      });
    }
}

void normal_bound(Outcome& out) {
  for (const auto& e : groups::bundled_catalog("small")) {
    const auto& G = e.group;
    auto series = groups::lower_p_series(G, e.p);
    std::vector<int> g;
    for (std::size_t i = 0; i + 1 < series.size(); ++i)
      g.push_back(prime_power_exponent(ExactInt(series[i].size() / series[i + 1].size()), e.p));
    std::map<std::vector<int>, long> counts;
    for (const auto& U : groups::normal_subgroups(G)) ++counts[groups::normal_profile(G, e.p, U)];
    std::vector<int> u(g.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == g.size()) {
        auto it = counts.find(u);
        long brute = it == counts.end() ? 0 : it->second;
        out.expect(Rational(brute) <= bounds::normalthm_bound(g, u, {}, {}, e.p), G.name());
        return;
      }
      for (u[i] = 0; u[i] <= g[i]; ++u[i]) rec(i + 1);
    };
    rec(0);
  }
}

void expansion(Outcome& out) {
  const int d = 3;
  for (int p : {2, 3, 5}) {
    auto basis2 = freelie::lambda_basis(d, 2, p);
    const int m = static_cast<int>(basis2.size());
    fplin::for_each_subspace(m, p, std::nullopt, [&](const fplin::FpSubspace& S) {
      std::vector<freelie::NcPoly> span;
      for (const auto& row : S.rref_basis()) {
        freelie::NcPoly f(p, d);
        for (int i = 0; i < m; ++i) f = f + basis2[i].scaled(row[i]);
        span.push_back(f);
      }
      auto rep = freelie::expansion_check(freelie::LieSubspace(p, d, 2, 2, span), freelie::ExpansionMode::homogeneous);
      out.expect(rep.hypotheses_met && rep.holds, "exhaustive degree 2, p=" + std::to_string(p));
    });
    auto basis3 = freelie::lambda_basis(d, 3, p);
    const int m3 = static_cast<int>(basis3.size());
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const int k = 1 + static_cast<int>(seed % m3);
      auto W = freelie::random_subspace(basis3, 3, 3, k, 7919 * p + seed);
      auto rep = freelie::expansion_check(W, freelie::ExpansionMode::homogeneous);
      out.expect(rep.hypotheses_met && rep.holds, "random degree 3, p=" + std::to_string(p));
    }
  }
  for (int p : {2, 3, 5})
    for (int dd = 1; dd <= 3; ++dd)
      for (int n = 1; n <= 6; ++n)
        for (const auto& w : freelie::lyndon_words(dd, n)) {
          auto b = freelie::right_bracketing(w, p, dd).expansion;
          bool ok = b.coefficient(w) == 1;
          for (const auto& [v, c] : b.terms()) ok = ok && !(v < w);
          out.expect(ok, "triangularity at " + freelie::word_to_string(w));
        }
}

void witt_lyndon(Outcome& out) {
  for (int d = 1; d <= 5; ++d) {
    ExactInt partial = 0;
    for (int n = 1; n <= 8; ++n) {
      auto words = freelie::lyndon_words(d, n);
      out.expect(freelie::witt_dim(d, n) == ExactInt(words.size()), "witt d=" + std::to_string(d));
      partial += ExactInt(words.size());
      out.expect(freelie::dn_dim(d, n) == partial, "partial sum d=" + std::to_string(d));
    }
  }
}

void estimates_suite(Outcome& out) {
  for (long long q : {2, 3, 5, 7, 9})
    for (int n = 1; n <= 12; ++n) out.expect(qcombin::check_qests(n, q).all(), "estimates q=" + std::to_string(q));
  for (int p : {2, 3})
    for (int d : {6, 7})
      for (int n : {3, 4})
        for (int i = 1; i <= n - 2; ++i) {
          const long long di = freelie::dn_dim(d, i).convert_to<long long>();
          for (long long u = 0; u <= di; ++u) {
            auto r = bounds::gaussprods_Ai(p, d, n, i, static_cast<int>(u));
            out.expect(r.hypotheses_met && r.holds, "nested sum bound d=" + std::to_string(d));
          }
        }
  for (int d = 2; d <= 30; ++d)
    for (int n = 3; n <= 14; ++n) {
      auto r = bounds::dn_inequalities(d, n);
      if (r.first_two_claimed) out.expect(r.first_holds && r.second_holds, "dimension inequalities 1-2");
      if (r.third_claimed) out.expect(r.third_holds, "dimension inequality 3");
    }
  for (auto [d, n] : {std::pair{17, 3}, std::pair{8, 4}, std::pair{6, 5}, std::pair{5, 10}}) {
    auto r = bounds::dn_inequalities(d, n);
    out.expect(r.third_claimed && r.third_holds, "boundary (" + std::to_string(d) + "," + std::to_string(n) + ")");
  }
}

void orbit_counting(Outcome& out) {
  for (int p : {3, 5})
    for (bool wedge : {false, true}) {
      auto act = wedge ? fplin::wedge_module(2, p) : fplin::natural_module(2, p);
      auto cf = fplin::cauchy_frobenius(act);
      auto census = fplin::regular_orbits(act);
      out.expect(cf.orbit_count == ExactInt(census.orbits.size()), "orbit count p=" + std::to_string(p));
      std::size_t total = 0;
      for (const auto& o : census.orbits) {
        out.expect(o.size * o.stabilizer_order == act.elements.size(), "orbit-stabilizer p=" + std::to_string(p));
        total += o.size;
      }
      out.expect(ExactInt(total) == fplin::subspace_total(act.dimension(), p), "orbits cover all subspaces");
    }
}

void walk_suite(Outcome& out) {
  const double wide_eps = static_cast<double>(std::numeric_limits<WideFloat>::epsilon());
  for (int p : {3, 7, 31})
    for (int d : {1, 2}) {
      auto spec = walk::WalkSpec::scalar(p, d, 2, 1.0);
      const std::string tag = " p=" + std::to_string(p) + " d=" + std::to_string(d);
      double worst = 0;
      for (int n = 0; n <= 200; ++n) {
        auto direct = walk::transform(walk::evolve_exact(spec, n));
        auto product = walk::fourier_of_walk(spec, n);
        for (std::size_t y = 0; y < direct.values.size(); ++y)
          worst = std::max(worst, std::abs(direct.values[y] - product.values[y]));
      }
      out.expect(worst <= 1e-9, "Fourier product vs convolution" + tag);
      auto rows = walk::time_series(spec, 200);
      auto wide = walk::tv_series_wide(spec, 200);
      for (const auto& row : rows) {
        const WideFloat gap = wide[row.n] - walk::tv_rounding_budget(spec, row.n, wide_eps);
        const WideFloat tv = gap > 0 ? gap : WideFloat(0);
        out.expect(4 * tv * tv <= WideFloat(row.ubthm), "diagonal bound" + tag + " n=" + std::to_string(row.n));
      }
      for (double c : {1.0, 2.0}) {
        auto sch = walk::ubcor_schedule(p, d, c);
        const double tv = walk::tv_distance(walk::evolve_exact(spec, static_cast<int>(sch.n)));
        out.expect(tv * tv <= sch.guarantee, "schedule" + tag);
      }
    }
  for (int t : {2, 3, 5})
    for (int d : {1, 2})
      for (int r : {1, 2, 4})
        out.expect(walk::meanlem_stats(t, d, r).max_deviation() <= 1e-9, "moment closed forms t=" + std::to_string(t));
  for (int t : {2, 3, 5, 7})
    for (int d : {1, 2, 3})
      for (int j = 0; j <= t; ++j) {
        auto a = walk::pi_gamma(t, d, j), b = walk::pi_gamma(t, d, (t - j) % t);
        out.expect(std::abs(a.pi - b.pi) <= 1e-12 && std::abs(a.gamma - b.gamma) <= 1e-12,
                   "product symmetry t=" + std::to_string(t));
      }
}

void aut_closed_forms(Outcome& out) {
  for (int p : {2, 3, 5, 7}) {
    int pk = p;
    for (int k = 1; pk <= 64; ++k, pk *= p)
      for (const auto& lambda : qcombin::partitions_of(k))
        out.expect(groups::macdonald_aut_order(lambda, p) == groups::aut_order(groups::abelian_of_type(lambda, p)),
                   "abelian " + lambda.to_string() + " p=" + std::to_string(p));
  }
  using V = groups::ExtraspecialVariant;
  auto d8 = groups::dihedral(8), q8 = groups::quaternion(8);
  const std::vector<std::tuple<std::string, groups::CayleyGroup, int, int, V>> cases{
      {"27 exponent 3", groups::extraspecial(3, true), 3, 1, V::exponent_p},
      {"27 exponent 9", groups::extraspecial(3, false), 3, 1, V::exponent_p2},
      {"D8", d8, 2, 1, V::plus_type},
      {"Q8", q8, 2, 1, V::minus_type},
      {"D8oD8", groups::central_product(d8, 2, d8, 2), 2, 2, V::plus_type},
      {"Q8oQ8", groups::central_product(q8, 2, q8, 2), 2, 2, V::plus_type},
      {"D8oQ8", groups::central_product(d8, 2, q8, 2), 2, 2, V::minus_type}};
  for (const auto& [name, G, p, n, variant] : cases)
    out.expect(groups::aut_order(G) == groups::winter_aut_order(p, n, variant), name);
}

}  // namespace

int main() {
  bool all = true;
  all &= run_criterion(1, "table census rows 2^3, 3^3, 5^3, 2^4", 120, census_rows);
  all &= run_criterion(2, "submodule formula equals subgroup oracle, |alpha| <= 5, p in {2,3}", 300, submodule_formula);
  all &= run_criterion(3, "structural S_M equals invariant-subspace count on GL(m,p), m <= 3, p in {2,3}", 600,
                       structural_count);
  all &= run_criterion(4, "S_M upper bounds on GL(m,p) grid and wedge modules d in {2,3}, p in {3,5}", 1200,
                       submodule_bounds);
  all &= run_criterion(5, "normal-subgroup bound dominates brute-force counts, catalog orders <= 64", 600, normal_bound);
  all &= run_criterion(6, "commutator expansion 3/2 bound and bracketing triangularity", 600, expansion);
  all &= run_criterion(7, "Witt dimensions equal Lyndon counts, d <= 5, n <= 8", 300, witt_lyndon);
  all &= run_criterion(8, "q-binomial estimates, nested sum bound, dimension inequalities", 600, estimates_suite);
  all &= run_criterion(9, "Cauchy-Frobenius equals union-find orbits, GL(2,3) and GL(2,5)", 300, orbit_counting);
  all &= run_criterion(10, "walk suite: transforms, diagonal bound, schedule, moments, symmetry", 600, walk_suite);
  all &= run_criterion(11, "closed-form automorphism group orders", 600, aut_closed_forms);
  return all ? 0 : 1;
}
