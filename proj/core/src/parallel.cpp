#include "pgrouplab/parallel.hpp"
#include "pgrouplab/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace pgl {

unsigned thread_budget() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PGROUPLAB_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_budget(), n));
  if (workers <= 1) {
    if (n > 0) body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  std::size_t step = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = w * step, hi = std::min(n, lo + step);
    if (lo >= hi) break;
    pool.emplace_back([&, w, lo, hi] {
      try {
        body(lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double log_of(const ExactInt& x) {
  if (x <= 0) throw std::domain_error("log_of: nonpositive argument");
  unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x));
  if (bits < 1000) return std::log(static_cast<double>(x));
  unsigned shift = bits - 60;
  ExactInt top = x >> shift;
  return std::log(static_cast<double>(top)) + shift * std::log(2.0);
}

}  // namespace pgl
