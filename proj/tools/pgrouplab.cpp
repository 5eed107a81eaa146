#include "pgrouplab/bounds.hpp"
#include "pgrouplab/fplin.hpp"
#include "pgrouplab/freelie.hpp"
#include "pgrouplab/groups.hpp"
#include "pgrouplab/parallel.hpp"
#include "pgrouplab/qcombin.hpp"
#include "pgrouplab/submod.hpp"
#include "pgrouplab/walk.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace pgl;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::string out;
  std::string manifest;
  bool unsafe_limits = false;
  Limits limits() const { return Limits{unsafe_limits}; }
};

// Result of one command: the main payload, human summary lines and failed checks.
struct RunResult {
  std::string payload;
  std::vector<std::string> summary;
  std::vector<std::string> failures;
  json extra = json::object();
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

int parse_int(const std::string& s) {
  std::size_t pos = 0;
  int v = std::stoi(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("not an integer: " + s);
  return v;
}

// "2,3,5" or "2..97"; ranges keep primes only when primes_only is set.
std::vector<int> parse_list(const std::string& spec, bool primes_only) {
  std::vector<int> out;
  for (const auto& item : split(spec, ',')) {
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(item));
      continue;
    }
    int lo = parse_int(item.substr(0, dots)), hi = parse_int(item.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty range: " + item);
    for (int v = lo; v <= hi; ++v)
      if (!primes_only || is_prime(v)) out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list: " + spec);
  return out;
}

qcombin::Partition parse_partition(const std::string& s) {
  std::vector<int> parts;
  for (const auto& item : split(s, ',')) parts.push_back(parse_int(item));
  return qcombin::Partition(parts);
}

// Rows separated by ';', entries by ','.
fplin::FpMat parse_matrix(const std::string& s, int d, int p) {
  auto rows = split(s, ';');
  if (static_cast<int>(rows.size()) != d) throw std::invalid_argument("matrix must have d rows");
  std::vector<long long> entries;
  for (const auto& r : rows) {
    auto cells = split(r, ',');
    if (static_cast<int>(cells.size()) != d) throw std::invalid_argument("matrix must have d columns");
    for (const auto& c : cells) entries.push_back(parse_int(c));
  }
  return fplin::FpMat(d, d, p, entries);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

json collect_inputs(const CLI::App& sub) {
  json inputs = json::object();
  for (const auto* opt : sub.get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    const auto& res = opt->results();
    std::string name = opt->get_name();
    if (name.rfind("--", 0) == 0) name = name.substr(2);
    if (opt->get_type_size() == 0)
      inputs[name] = true;
    else
      inputs[name] = res.size() == 1 ? json(res[0]) : json(res);
  }
  return inputs;
}

RunResult cmd_census(int p, int k, const std::string& catalog_path, const RunConfig& cfg) {
  groups::CensusResult res;
  if (!catalog_path.empty()) {
    std::ifstream is(catalog_path);
    if (!is) throw std::invalid_argument("cannot open catalog " + catalog_path);
    auto catalog = groups::read_catalog(is);
    const ExactInt order = ipow(ExactInt(p), static_cast<unsigned>(k));
    for (const auto& e : catalog)
      if (e.p != p || ExactInt(e.group.order()) != order)
        throw std::invalid_argument("catalog group " + e.group.name() + " is not of order p^k");
    res = groups::census(catalog, cfg.limits());
  } else {
    res = groups::census(p, k, cfg.limits());
  }
  std::ostringstream os;
  os << "name,aut_order,aut_is_p_group\n";
  for (const auto& [name, order] : res.aut_orders)
    os << csv_field(name) << ',' << order << ',' << (prime_power_exponent(order, p) >= 0 ? "true" : "false") << '\n';
  RunResult r;
  r.payload = os.str();
  r.summary.push_back(std::to_string(res.aut_p_groups) + "/" + std::to_string(res.total));
  r.extra["aut_p_groups"] = res.aut_p_groups;
  r.extra["total"] = res.total;
  return r;
}

RunResult cmd_bounds(const std::string& kind, const std::string& ps, const std::string& ds, const std::string& ns,
                     const RunConfig& cfg) {
  std::vector<bounds::GridRow> rows;
  auto dl = parse_list(ds, false), nl = parse_list(ns, false);
  if (kind == "dn") {
    rows = bounds::dn_grid(dl, nl);
  } else {
    auto pl = parse_list(ps, true);
    if (kind == "limit1")
      rows = bounds::limit1_grid(pl, dl, nl);
    else if (kind == "limit2")
      rows = bounds::limit2_grid(pl, dl, nl);
    else if (kind == "gaussprods")
      rows = bounds::gaussprods_grid(pl, dl, nl, cfg.limits());
    else
      throw std::invalid_argument("unknown bound kind " + kind);
  }
  std::ostringstream os;
  bounds::write_csv(os, rows);
  RunResult r;
  r.payload = os.str();
  int held = 0, warned = 0;
  for (const auto& row : rows) {
    held += row.holds;
    warned += !row.warnings.empty();
  }
  r.summary.push_back("rows " + std::to_string(rows.size()) + " holds " + std::to_string(held) + " warnings " +
                      std::to_string(warned));
  return r;
}

RunResult cmd_lie(int d, int n, int p, bool witt, bool dn, bool lyndon, bool triangularity, bool expansion,
                  int samples, std::uint64_t seed, const RunConfig& cfg) {
  RunResult r;
  std::vector<std::pair<std::string, std::string>> values;
  if (witt) values.emplace_back("witt_dim", freelie::witt_dim(d, n).str());
  if (dn) values.emplace_back("dn_dim", freelie::dn_dim(d, n).str());
  if (lyndon) {
    std::ostringstream os;
    for (const auto& w : freelie::lyndon_words(d, n, cfg.limits())) os << freelie::word_to_string(w) << '\n';
    r.payload = os.str();
  }
  if (triangularity) {
    int bad = 0, total = 0;
    for (int len = 1; len <= n; ++len)
      for (const auto& w : freelie::lyndon_words(d, len, cfg.limits())) {
        auto b = freelie::right_bracketing(w, p, d).expansion;
        bool ok = b.coefficient(w) == 1;
        for (const auto& [v, c] : b.terms()) ok = ok && !(v < w);
        ++total;
        if (!ok) {
          ++bad;
          r.failures.push_back("triangularity " + freelie::word_to_string(w));
        }
      }
    values.emplace_back("triangularity", std::to_string(total - bad) + "/" + std::to_string(total));
  }
  if (expansion) {
    auto basis = freelie::lambda_basis(d, n, p, cfg.limits());
    int held = 0, met = 0;
    for (int s = 0; s < samples; ++s) {
      const int k = 1 + s % static_cast<int>(basis.size());
      auto W = freelie::random_subspace(basis, n, n, k, seed + static_cast<std::uint64_t>(s));
      auto rep = freelie::expansion_check(W, freelie::ExpansionMode::homogeneous);
      if (!rep.hypotheses_met) continue;
      ++met;
      if (rep.holds)
        ++held;
      else
        r.failures.push_back("expansion sample " + std::to_string(s));
    }
    values.emplace_back("expansion", std::to_string(held) + "/" + std::to_string(met));
  }
  if (values.size() == 1 && r.payload.empty()) {
    r.summary.push_back(values[0].second);
  } else {
    for (const auto& [k, v] : values) r.summary.push_back(k + " " + v);
  }
  for (const auto& [k, v] : values) r.extra[k] = v;
  return r;
}

RunResult cmd_submod(const std::string& alpha_s, const std::string& beta_s, long long q, bool oracle, bool total,
                     const RunConfig& cfg) {
  auto alpha = parse_partition(alpha_s), beta = parse_partition(beta_s);
  RunResult r;
  const auto count = submod::submodule_count(alpha, beta, q);
  r.summary.push_back(count.str());
  r.extra["count"] = count.str();
  if (total) {
    auto t = submod::total_submodules(alpha, q, cfg.limits());
    r.summary.push_back("total " + t.str());
    r.extra["total"] = t.str();
  }
  if (oracle) {
    if (!is_prime(q)) throw std::invalid_argument("--oracle needs a prime q");
    auto brute = submod::abelian_subgroup_oracle(static_cast<int>(q), alpha.conjugate(), beta.conjugate(), cfg.limits());
    r.summary.push_back("oracle " + brute.str());
    r.extra["oracle"] = brute.str();
    if (brute != count) r.failures.push_back("formula " + count.str() + " differs from oracle " + brute.str());
  }
  return r;
}

RunResult cmd_orbits(int d, int p, const std::string& module, const RunConfig& cfg) {
  fplin::LinearAction act = module == "wedge"     ? fplin::wedge_module(d, p, cfg.limits())
                            : module == "natural" ? fplin::natural_module(d, p, cfg.limits())
                                                  : throw std::invalid_argument("unknown module " + module);
  auto cf = fplin::cauchy_frobenius(act, cfg.limits());
  auto census = fplin::regular_orbits(act, cfg.limits());
  std::ostringstream os;
  os << "orbit,size,stabilizer_order,dimension\n";
  RunResult r;
  for (std::size_t i = 0; i < census.orbits.size(); ++i) {
    const auto& o = census.orbits[i];
    os << i << ',' << o.size << ',' << o.stabilizer_order << ',' << o.representative_dim << '\n';
    if (o.size * o.stabilizer_order != act.elements.size())
      r.failures.push_back("orbit-stabilizer product fails for orbit " + std::to_string(i));
  }
  r.payload = os.str();
  if (cf.orbit_count != ExactInt(census.orbits.size()))
    r.failures.push_back("Cauchy-Frobenius count " + cf.orbit_count.str() + " differs from partition count " +
                         std::to_string(census.orbits.size()));
  r.summary.push_back("orbits " + cf.orbit_count.str() + " regular " + census.regular_count.str() + " group_order " +
                      std::to_string(act.elements.size()));
  r.extra["orbits"] = cf.orbit_count.str();
  r.extra["regular"] = census.regular_count.str();
  return r;
}

RunResult cmd_walk(const walk::WalkSpec& spec, int n, bool monte_carlo, bool series, long long trials,
                   std::uint64_t seed, const RunConfig& cfg) {
  spec.validate();
  RunResult r;
  if (series) {
    auto rows = walk::time_series(spec, n, cfg.limits());
    std::ostringstream os;
    walk::write_series_csv(os, rows);
    r.payload = os.str();
    for (const auto& row : rows) {
      const double resolved = std::max(0.0, row.tv - walk::tv_rounding_budget(spec, row.n));
      if (resolved * resolved > row.chi2 * (1 + 1e-12))
        r.failures.push_back("Fourier upper bound fails at n=" + std::to_string(row.n));
    }
    r.summary.push_back("rows " + std::to_string(rows.size()));
    return r;
  }
  const auto dist = monte_carlo ? walk::monte_carlo(spec, n, trials, seed) : walk::evolve_exact(spec, n, cfg.limits());
  const double tv = walk::tv_distance(dist);
  std::ostringstream os;
  os << "state,probability\n";
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", dist.probs[i]);
    os << i << ',' << buf << '\n';
  }
  r.payload = os.str();
  r.summary.push_back("TV " + fixed(tv, 4));
  r.extra["tv"] = tv;
  r.extra["mass_deviation"] = dist.mass_deviation();
  if (!monte_carlo) {
    const double chi2 = walk::chi2_rhs(walk::fourier_of_walk(spec, n, cfg.limits()));
    r.summary.push_back("chi2_rhs " + fixed(chi2, 6));
    r.extra["chi2_rhs"] = chi2;
    const double resolved = std::max(0.0, tv - walk::tv_rounding_budget(spec, n));
    if (resolved * resolved > chi2 * (1 + 1e-12)) r.failures.push_back("Fourier upper bound fails");
    if (walk::diagonal_eigenvalues(spec.A)) {
      const double ub = walk::ubthm_bound(spec, n);
      r.summary.push_back("ubthm_bound " + fixed(ub, 6));
      r.extra["ubthm_bound"] = ub;
    }
    if (dist.mass_deviation() > 1e-9) r.failures.push_back("mass deviation exceeds 1e-9");
    if (dist.min_entry() < -1e-12) r.failures.push_back("negative probability");
  }
  return r;
}

RunResult cmd_selftest() {
  RunResult r;
  auto check = [&](bool ok, const std::string& what) {
    r.summary.push_back(std::string(ok ? "PASS " : "FAIL ") + what);
    if (!ok) r.failures.push_back(what);
  };
  auto c = groups::census(2, 3);
  check(c.aut_p_groups == 3 && c.total == 5, "census 2^3 = 3/5");
  check(submod::submodule_count(qcombin::Partition{2}, qcombin::Partition{1}, 2) == 3, "submodule count (2),(1),2 = 3");
  check(freelie::witt_dim(2, 3) == 2, "witt dimension d=2 n=3 = 2");
  check(freelie::dn_dim(3, 3) == 14, "partial Witt sum d=3 n=3 = 14");
  check(qcombin::gauss_binom(4, 2, 2) == 35, "Gaussian coefficient (4,2)_2 = 35");
  check(groups::aut_order(groups::quaternion(8)) == 24, "automorphisms of Q8 = 24");
  auto s = walk::WalkSpec::scalar(3, 1, 2, 1.0);
  check(std::abs(walk::tv_distance(walk::evolve_exact(s, 1)) - 1.0 / 3.0) < 1e-12, "walk p=3 n=1 TV = 1/3");
  check(std::abs(walk::d_n_expression(3, 2, 1.0, 1) - 0.5) < 1e-12, "D_1(2, 1) at p=3 = 1/2");
  auto nat = fplin::natural_module(2, 3);
  check(fplin::cauchy_frobenius(nat).orbit_count == 3, "GL(2,3) subspace orbits = 3");
  return r;
}

int emit(const std::string& command, const CLI::App& sub, const RunConfig& cfg, const RunResult& res,
         const json& extra_inputs) {
  if (cfg.out.empty()) {
    std::cout << res.payload;
  } else {
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + cfg.out);
    os << res.payload;
  }
  for (const auto& line : res.summary) std::cout << line << '\n';

  const std::string manifest_path = !cfg.manifest.empty() ? cfg.manifest
                                    : !cfg.out.empty()    ? cfg.out + ".manifest.json"
                                                          : std::string();
  if (!manifest_path.empty()) {
    json m;
    m["command"] = command;
    m["version"] = kVersion;
    json inputs = collect_inputs(sub);
    for (const auto& [k, v] : extra_inputs.items()) inputs[k] = v;
    m["inputs"] = inputs;
    m["guards"] = {{"unsafe_limits", cfg.unsafe_limits}};
    m["threads"] = thread_budget();
    m["output"] = cfg.out.empty() ? json(nullptr) : json(cfg.out);
    m["results"] = res.extra;
    m["failures"] = res.failures;
    std::ofstream ms(manifest_path, std::ios::binary);
    if (!ms) throw std::runtime_error("cannot write " + manifest_path);
    ms << m.dump(2) << '\n';
  }
  if (!res.failures.empty()) {
    std::cerr << json{{"failures", res.failures}}.dump() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pgrouplab: p-group counting, bounds and random walk experiments"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Write the main output to this file");
    sub->add_option("--manifest", cfg.manifest, "Manifest path (default: <out>.manifest.json)");
    sub->add_flag("--unsafe-limits", cfg.unsafe_limits, "Lift the default resource guards");
  };

  int census_p = 0, census_k = 0;
  std::string catalog;
  auto* census = app.add_subcommand("census", "Count groups of order p^k whose automorphism group is a p-group");
  census->add_option("--p", census_p, "Prime")->required();
  census->add_option("--k", census_k, "Exponent")->required();
  census->add_option("--catalog", catalog, "Catalog file in the text format");
  add_common(census);

  std::string kind = "limit1", ps = "2", ds = "6", ns = "3";
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate bound grids or a single tuple");
  bounds_cmd->add_option("--kind", kind, "limit1, limit2, gaussprods or dn")
      ->check(CLI::IsMember({"limit1", "limit2", "gaussprods", "dn"}));
  bounds_cmd->add_option("--p", ps, "Primes: list a,b,c or range a..b (primes only)");
  bounds_cmd->add_option("--d", ds, "Generator counts: list or range");
  bounds_cmd->add_option("--n", ns, "Class bounds: list or range");
  add_common(bounds_cmd);

  int lie_d = 2, lie_n = 1, lie_p = 2, samples = 200;
  std::uint64_t lie_seed = 1;
  bool witt = false, dn = false, lyndon = false, tri = false, expansion = false;
  auto* lie = app.add_subcommand("lie", "Free Lie algebra dimensions, Lyndon words and checks");
  lie->add_option("--d", lie_d, "Number of generators")->required();
  lie->add_option("--n", lie_n, "Degree")->required();
  lie->add_option("--p", lie_p, "Field characteristic");
  lie->add_flag("--witt", witt, "Dimension of the degree-n component");
  lie->add_flag("--dn", dn, "Sum of dimensions of degrees 1..n");
  lie->add_flag("--lyndon", lyndon, "List Lyndon words of length n");
  lie->add_flag("--triangularity", tri, "Check bracketing triangularity for lengths <= n");
  lie->add_flag("--expansion", expansion, "Check the 3/2 expansion bound on random subspaces");
  lie->add_option("--samples", samples, "Random subspaces for --expansion");
  lie->add_option("--seed", lie_seed, "Seed for --expansion");
  add_common(lie);

  std::string alpha, beta;
  long long q = 2;
  bool oracle = false, total = false;
  auto* sub = app.add_subcommand("submod", "Count submodules of a given type");
  sub->add_option("--alpha", alpha, "Ambient type, parts separated by commas")->required();
  sub->add_option("--beta", beta, "Submodule type, parts separated by commas")->required();
  sub->add_option("--q", q, "Residue field order")->required();
  sub->add_flag("--oracle", oracle, "Compare with brute-force subgroup counting (prime q)");
  sub->add_flag("--total", total, "Also print the total number of submodules");
  add_common(sub);

  int orb_d = 2, orb_p = 3;
  std::string module = "natural";
  auto* orbits = app.add_subcommand("orbits", "Orbits of GL(d,p) on subspaces of a module");
  orbits->add_option("--d", orb_d, "Dimension")->required();
  orbits->add_option("--p", orb_p, "Prime")->required();
  orbits->add_option("--module", module, "natural or wedge")->check(CLI::IsMember({"natural", "wedge"}));
  add_common(orbits);

  int wp = 3, wd = 1, wa = 2, wn = 1;
  double wq = 1.0;
  std::string matrix;
  bool exact = false, mc = false, series = false;
  long long trials = 100000;
  std::uint64_t wseed = 1;
  auto* walk_cmd = app.add_subcommand("walk", "Twisted random walk X -> A X + g on C_p^d");
  walk_cmd->add_option("--p", wp, "Odd prime")->required();
  walk_cmd->add_option("--d", wd, "Dimension");
  walk_cmd->add_option("--a", wa, "Scalar multiplier, A = aI");
  walk_cmd->add_option("--matrix", matrix, "Matrix A, rows separated by ';' and entries by ','");
  walk_cmd->add_option("--q", wq, "Probability of a nonzero step");
  walk_cmd->add_option("--n", wn, "Number of steps")->required();
  auto* exact_opt = walk_cmd->add_flag("--exact", exact, "Exact evolution (default)");
  auto* mc_opt = walk_cmd->add_flag("--monte-carlo", mc, "Simulated paths");
  walk_cmd->add_flag("--series", series, "CSV time series for steps 0..n")->excludes(mc_opt);
  exact_opt->excludes(mc_opt);
  walk_cmd->add_option("--trials", trials, "Monte Carlo trials");
  walk_cmd->add_option("--seed", wseed, "Monte Carlo seed");
  add_common(walk_cmd);

  auto* selftest = app.add_subcommand("selftest", "Quick consistency checks");
  add_common(selftest);

  CLI11_PARSE(app, argc, argv);

  try {
    if (census->parsed()) return emit("census", *census, cfg, cmd_census(census_p, census_k, catalog, cfg), {});
    if (bounds_cmd->parsed()) return emit("bounds", *bounds_cmd, cfg, cmd_bounds(kind, ps, ds, ns, cfg), {});
    if (lie->parsed())
      return emit("lie", *lie, cfg,
                  cmd_lie(lie_d, lie_n, lie_p, witt, dn, lyndon, tri, expansion, samples, lie_seed, cfg), {});
    if (sub->parsed()) return emit("submod", *sub, cfg, cmd_submod(alpha, beta, q, oracle, total, cfg), {});
    if (orbits->parsed()) return emit("orbits", *orbits, cfg, cmd_orbits(orb_d, orb_p, module, cfg), {});
    if (walk_cmd->parsed()) {
      walk::WalkSpec spec = matrix.empty() ? walk::WalkSpec::scalar(wp, wd, wa, wq)
                                           : walk::WalkSpec{wp, wd, parse_matrix(matrix, wd, wp), wq};
      json extra = {{"matrix", spec.A.to_string()}, {"seed", wseed}, {"mass_tolerance", 1e-9}};
      return emit("walk", *walk_cmd, cfg, cmd_walk(spec, wn, mc, series, trials, wseed, cfg), extra);
    }
    if (selftest->parsed()) return emit("selftest", *selftest, cfg, cmd_selftest(), {});
  } catch (const ResourceGuardError& e) {
    std::cerr << json{{"error", e.what()}, {"hint", "rerun with --unsafe-limits"}}.dump() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << '\n';
    return 2;
  }
  return 2;
}
