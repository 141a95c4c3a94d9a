#pragma once

#include <cstddef>
#include <functional>

namespace arb {

// Process-wide worker count for row-parallel kernels. 1 disables threading.
void set_threads(unsigned n);
unsigned get_threads();

// Runs body(begin..end) split into contiguous chunks, one per worker.
// Each index is visited exactly once; per-index work must be independent.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& chunk);

}  // namespace arb
