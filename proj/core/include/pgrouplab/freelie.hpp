#pragma once

#include "pgrouplab/exact.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pgl::freelie {

// Letters are 1..d; std::vector ordering is the lexicographic order with
// proper prefixes first.
using Word = std::vector<int>;

std::string word_to_string(const Word& w);
Word word_from_string(const std::string& digits);
bool is_lyndon(const Word& w);

// Noncommutative polynomial over F_p in x_1..x_d, sparse in words.
class NcPoly {
 public:
  NcPoly(int p, int d);
  static NcPoly generator(int p, int d, int j);
  static NcPoly monomial(int p, int d, const Word& w, long long coeff = 1);

  int modulus() const { return p_; }
  int alphabet() const { return d_; }
  const std::map<Word, int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int coefficient(const Word& w) const;
  void add_term(const Word& w, long long coeff);

  NcPoly operator+(const NcPoly& o) const;
  NcPoly operator-(const NcPoly& o) const;
  NcPoly operator*(const NcPoly& o) const;
  NcPoly scaled(long long c) const;
  bool operator==(const NcPoly& o) const;

  std::string to_string() const;

 private:
  void check_compatible(const NcPoly& o) const;

  int p_, d_;
  std::map<Word, int> terms_;
};

NcPoly lie_bracket(const NcPoly& f, const NcPoly& g);

std::vector<Word> lyndon_words(int d, int n, const Limits& limits = {});

struct Bracketing {
  std::string tree;  // e.g. "[x1,[x1,x2]]"
  NcPoly expansion;
};

// Right standard bracketing: split at the longest proper Lyndon tail.
Bracketing right_bracketing(const Word& w, int p, int d);

std::vector<NcPoly> lambda_basis(int d, int n, int p, const Limits& limits = {});

ExactInt witt_dim(int d, int n);
ExactInt dn_dim(int d, int n);

NcPoly com_j(const NcPoly& f, int j);

// Subspace of polynomials supported on words of lengths lo..hi, stored as a
// reduced echelon basis in the (length, lexicographic) word order.
class LieSubspace {
 public:
  LieSubspace(int p, int d, int lo, int hi, const std::vector<NcPoly>& spanning = {});

  int modulus() const { return p_; }
  int alphabet() const { return d_; }
  int low_degree() const { return lo_; }
  int high_degree() const { return hi_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  std::vector<NcPoly> basis() const;
  bool contains(const NcPoly& f) const;
  // Same subspace viewed inside a wider degree range.
  LieSubspace widened(int lo, int hi) const;
  LieSubspace sum(const LieSubspace& other) const;

  friend bool operator==(const LieSubspace& a, const LieSubspace& b) {
    return a.p_ == b.p_ && a.d_ == b.d_ && a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.rows_ == b.rows_;
  }

 private:
  std::vector<int> coordinates(const NcPoly& f) const;
  NcPoly polynomial(const std::vector<int>& row) const;

  int p_, d_, lo_, hi_;
  std::size_t width_;
  std::vector<std::vector<int>> rows_;
};

LieSubspace com_subspace(const LieSubspace& W);

enum class ExpansionMode { homogeneous, graded_sum };

struct ExpansionReport {
  int dim_w = 0;
  int dim_image = 0;  // dim com(W) or dim(W + com(W))
  bool holds = false;  // 2 * dim_image >= 3 * dim_w
  bool hypotheses_met = false;
  std::string note;
};

ExpansionReport expansion_check(const LieSubspace& W, ExpansionMode mode);

// Row space of a uniformly random k x |basis| coefficient matrix.
LieSubspace random_subspace(const std::vector<NcPoly>& ambient_basis, int lo, int hi, int k,
                            std::uint64_t seed);

}  // namespace pgl::freelie
