#pragma once

#include "pgrouplab/exact.hpp"
#include "pgrouplab/fplin.hpp"
#include "pgrouplab/qcombin.hpp"

#include <string>
#include <vector>

namespace pgl::submod {

using qcombin::BoundReal;
using qcombin::Partition;

// A module over a DVR with residue field of order q whose type is conj(alpha).
struct ModuleType {
  Partition alpha;
  ExactInt q;
};

// Number of submodules of type conj(beta) in a module of type conj(alpha);
// zero when beta is not contained in alpha.
ExactInt submodule_count(const Partition& alpha, const Partition& beta, const ExactInt& q);
ExactInt total_submodules(const Partition& alpha, const ExactInt& q, const Limits& limits = {});

// Brute force: subgroups of type mu inside the abelian p-group of type lambda.
ExactInt abelian_subgroup_oracle(int p, const Partition& lambda, const Partition& mu, const Limits& limits = {});

// Univariate polynomial over F_p, coefficients lowest degree first, monic.
using FpPoly = std::vector<int>;
std::string poly_to_string(const FpPoly& f);

struct PrimaryComponent {
  FpPoly f;
  Partition mu;  // F_p[t]/(f)^{mu_1} + F_p[t]/(f)^{mu_2} + ...
  ExactInt q;    // p^{deg f}
  ModuleType type() const { return {mu.conjugate(), q}; }
};

struct PrimaryDecomposition {
  int p = 0;
  std::vector<PrimaryComponent> components;  // sorted by (degree, coefficients)
  int dimension() const;
};

// Monic irreducible polynomials of exact degree k over F_p, in lexicographic order.
std::vector<FpPoly> monic_irreducibles(int p, int k);
FpPoly minimal_polynomial(const fplin::FpMat& g);
PrimaryDecomposition decompose(const fplin::FpMat& g);

// Number of g-invariant subspaces computed from the primary decomposition.
ExactInt structural_sm(const PrimaryDecomposition& dec, const Limits& limits = {});

// log_p(C(p) D(p)) from the certified upper enclosures of both series.
BoundReal epsilon(int p);

struct SmReport {
  ExactInt sm;
  BoundReal log_sm;  // log_p S_M
  BoundReal bound;   // upper bound, in log_p units
  bool scalar_case = false;
  bool holds = false;  // scalar: S_M equals the Galois number; else log_sm <= bound certified
};

SmReport sm_value_and_bound(const fplin::FpMat& g, const Limits& limits = {});

// (m - 4)^2 / 4 + C with C = eps + 2m - 4 for m <= 45 and 5 eps + 4 beyond.
BoundReal stronger_bound(int m, int p);

// log_p of an exact positive integer as an enclosure.
BoundReal log_base(const ExactInt& x, int p);

}  // namespace pgl::submod
