#pragma once

#include <cstddef>
#include <functional>

namespace pgl {

// Worker count: hardware concurrency, capped by PGROUPLAB_THREADS when set.
unsigned thread_budget();

// Runs body(begin, end) over disjoint chunks of [0, n); chunk boundaries
// depend only on n and the budget, so per-index results are reproducible.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace pgl
