#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace pgl {

using ExactInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// 50 decimal digits with a wide binary exponent; used where sums span p^{±10^5}.
using WideFloat = boost::multiprecision::cpp_bin_float_50;

// Thrown when a computation would exceed a documented resource guard.
class ResourceGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Default guards can be lifted only by passing unsafe = true explicitly.
struct Limits {
  bool unsafe = false;
};

inline void enforce_guard(bool within, const Limits& limits, const std::string& what) {
  if (!within && !limits.unsafe) throw ResourceGuardError("resource guard: " + what);
}

inline ExactInt ipow(const ExactInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

// Returns k with n == p^k, or -1.
inline int prime_power_exponent(const ExactInt& n, long long p) {
  if (n < 1) return -1;
  ExactInt m = n;
  int k = 0;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  return m == 1 ? k : -1;
}

double log_of(const ExactInt& x);

}  // namespace pgl
