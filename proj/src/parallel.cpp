#include "arb/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace arb {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_threads(unsigned n) { g_threads.store(n == 0 ? 1 : n); }

unsigned get_threads() { return g_threads.load(); }

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& chunk) {
  const std::size_t count = end > begin ? end - begin : 0;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(g_threads.load(), count));
  if (workers <= 1) {
    if (count > 0) chunk(begin, end);
    return;
  }
  const std::size_t per = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = begin + w * per;
    const std::size_t hi = std::min(end, lo + per);
    if (lo >= hi) break;
    pool.emplace_back([&chunk, lo, hi] { chunk(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace arb
