#pragma once

// Row reduction over F_p shared by the linear-algebra modules.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pgl::detail {

inline int mod_p(long long a, int p) {
  long long r = a % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

inline int inv_mod(int a, int p) {
  a = mod_p(a, p);
  if (a == 0) throw std::domain_error("inverse of zero mod p");
  long long result = 1, base = a;
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<int>(result);
}

using Rows = std::vector<std::vector<int>>;

// In-place reduced row echelon form; zero rows removed. Returns pivot columns.
inline std::vector<std::size_t> rref(Rows& rows, int p) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  std::size_t width = rows[0].size(), r = 0;
  for (std::size_t col = 0; col < width && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    int s = inv_mod(rows[r][col], p);
    if (s != 1)
      for (auto& v : rows[r]) v = static_cast<int>(static_cast<long long>(v) * s % p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      long long c = p - rows[i][col];
      auto& dst = rows[i];
      const auto& src = rows[r];
      for (std::size_t j = col; j < width; ++j)
        if (src[j]) dst[j] = static_cast<int>((dst[j] + c * src[j]) % p);
    }
    pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

inline std::size_t rank(Rows rows, int p) { return rref(rows, p).size(); }

// Leading column of each row of an echelonized list.
inline std::size_t leading(const std::vector<int>& row) {
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j]) return j;
  return row.size();
}

// Reduces v against an RREF basis; returns true iff v ends up zero.
inline bool reduce(const Rows& basis, std::vector<int>& v, int p) {
  for (const auto& b : basis) {
    std::size_t col = leading(b);
    int c = v[col];
    if (!c) continue;
    long long m = p - c;
    for (std::size_t j = col; j < v.size(); ++j)
      if (b[j]) v[j] = static_cast<int>((v[j] + m * b[j]) % p);
  }
  for (int x : v)
    if (x) return false;
  return true;
}

}  // namespace pgl::detail
