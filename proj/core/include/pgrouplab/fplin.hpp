#pragma once

#include "pgrouplab/exact.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pgl::fplin {

class FpMat {
 public:
  FpMat(int rows, int cols, int p);
  FpMat(int rows, int cols, int p, const std::vector<long long>& row_major);
  static FpMat identity(int n, int p);
  static FpMat scalar(int n, int p, long long c);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int modulus() const { return p_; }
  int at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  void set(int i, int j, long long v);
  const std::vector<int>& entries() const { return a_; }

  FpMat operator+(const FpMat& o) const;
  FpMat operator*(const FpMat& o) const;
  std::vector<int> apply(const std::vector<int>& v) const;
  FpMat transpose() const;
  FpMat inverse() const;
  FpMat power(long long e) const;
  int rank() const;
  int determinant() const;
  bool invertible() const { return rank() == rows_ && rows_ == cols_; }
  bool is_scalar() const;
  std::string to_string() const;

  friend bool operator==(const FpMat& a, const FpMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.p_ == b.p_ && a.a_ == b.a_;
  }
  friend bool operator<(const FpMat& a, const FpMat& b) { return a.a_ < b.a_; }

 private:
  int rows_, cols_, p_;
  std::vector<int> a_;
};

// Subspace of F_p^m (column vectors) kept in reduced row echelon form.
class FpSubspace {
 public:
  FpSubspace(int ambient, int p, std::vector<std::vector<int>> spanning = {});

  int ambient_dim() const { return ambient_; }
  int modulus() const { return p_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<int>>& rref_basis() const { return rows_; }
  bool contains(std::vector<int> v) const;
  FpSubspace image(const FpMat& g) const;
  bool invariant_under(const FpMat& g) const;
  // Flat canonical key: equal keys iff equal subspaces.
  std::vector<int> key() const;

  friend bool operator==(const FpSubspace& a, const FpSubspace& b) {
    return a.ambient_ == b.ambient_ && a.p_ == b.p_ && a.rows_ == b.rows_;
  }

 private:
  int ambient_, p_;
  std::vector<std::vector<int>> rows_;
};

struct LinearAction {
  std::vector<FpMat> elements;
  std::string provenance;
  bool split_model = false;  // p = 2 direct-sum stand-in for the extension module
  int dimension() const { return elements.empty() ? 0 : elements[0].rows(); }
  int modulus() const { return elements.empty() ? 0 : elements[0].modulus(); }
};

// Validates invertibility, identity and (for at most 2000 elements) closure.
LinearAction make_action(std::vector<FpMat> elements, std::string provenance, bool split_model = false);

ExactInt subspace_total(int m, int p);
void for_each_subspace(int m, int p, std::optional<int> dim, const std::function<void(const FpSubspace&)>& visit,
                       const Limits& limits = {});
std::vector<FpSubspace> enumerate_subspaces(int m, int p, std::optional<int> dim = std::nullopt,
                                            const Limits& limits = {});

ExactInt gl_order(int d, int p);
void for_each_gl(int d, int p, const std::function<void(const FpMat&)>& visit);
std::vector<FpMat> gl_enumerate(int d, int p, const Limits& limits = {});
FpMat random_gl(int d, int p, std::mt19937_64& rng);

ExactInt invariant_subspace_count(const FpMat& g, const Limits& limits = {});

// Block matrix of g on V and of its exterior square on the wedge coordinates.
FpMat wedge_matrix(const FpMat& g);
LinearAction natural_module(int d, int p, const Limits& limits = {});
LinearAction wedge_module(int d, int p, const Limits& limits = {});

struct CauchyFrobeniusResult {
  ExactInt orbit_count;
  std::vector<ExactInt> fixed_point_counts;  // aligned with action.elements
};

CauchyFrobeniusResult cauchy_frobenius(const LinearAction& action, const Limits& limits = {});

struct OrbitRecord {
  std::size_t size = 0;
  std::size_t stabilizer_order = 0;
  int representative_dim = 0;
};

struct OrbitCensus {
  ExactInt regular_count;
  std::vector<OrbitRecord> orbits;  // ordered by the canonical index of their first subspace
};

OrbitCensus regular_orbits(const LinearAction& action, const Limits& limits = {});

}  // namespace pgl::fplin
