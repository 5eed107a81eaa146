#pragma once

#include "pgrouplab/exact.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace pgl::qcombin {

// A real value with a rigorous absolute error radius.
struct BoundReal {
  double value = 0.0;
  double abs_error = 0.0;

  double lo() const { return value - abs_error; }
  double hi() const { return value + abs_error; }
};

BoundReal operator+(const BoundReal& a, const BoundReal& b);
BoundReal operator*(const BoundReal& a, const BoundReal& b);
BoundReal operator/(const BoundReal& a, const BoundReal& b);
BoundReal from_exact(const ExactInt& x);
// base^exponent for an exactly representable base.
BoundReal power(double base, double exponent);
// a^k for an enclosure a and a nonnegative integer k.
BoundReal power(const BoundReal& a, int k);

// Certified comparisons; false when the enclosures overlap.
bool certainly_le(const BoundReal& a, const BoundReal& b);
bool certainly_lt(const BoundReal& a, const BoundReal& b);

class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts);
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int size() const;
  // Part i (0-based); zero past the end.
  int operator[](int i) const { return i < length() ? parts_[i] : 0; }
  bool empty() const { return parts_.empty(); }

  Partition conjugate() const;
  // Componentwise containment: this ⊆ other.
  bool contained_in(const Partition& other) const;
  // Multiplicity of the part value v.
  int multiplicity(int v) const;
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

std::vector<Partition> partitions_of(int n);
// All partitions contained in the given one, including the empty partition.
std::vector<Partition> subpartitions(const Partition& outer);

ExactInt gauss_binom(int n, int k, const ExactInt& q);
ExactInt galois_number(int n, const ExactInt& q);
ExactInt s_n(int n, const ExactInt& q);

BoundReal c_series(double x, double target_abs_error = 1e-14);
BoundReal d_series(double x, double target_abs_error = 1e-14);

struct QestsReport {
  bool coefficient_bound = false;  // binom(n,k)_q <= D(q) q^{k(n-k)} for every k
  bool galois_lower = false;       // lower estimate of the Galois number
  bool galois_upper = false;       // G_n <= S_n D <= C D q^{n^2/4}
  bool all() const { return coefficient_bound && galois_lower && galois_upper; }
};

QestsReport check_qests(int n, long long q);

struct PolyboundReport {
  double sum = 0.0;  // sum of q^{f(r)} over t <= r <= u
  double bound = 0.0;
  double argmax = 0.0;
  bool holds = false;
};

// f(x) = -a x^2 + b x + c.
PolyboundReport polybound_check(double a, double b, double c, int t, int u, double q);

struct QuadboundReport {
  long long sum_squares = 0;
  long long first_rhs = 0;
  bool first_holds = false;
  bool second_applies = false;
  bool second_holds = false;
};

QuadboundReport quadbound_check(const std::vector<int>& alphas, double eps);

}  // namespace pgl::qcombin
