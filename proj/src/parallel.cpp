#include "detgp/parallel.hpp"

#include <atomic>

namespace detgp {

namespace {
std::atomic<int> g_threads{1};
}

void set_num_threads(int n) { g_threads.store(n < 1 ? 1 : n); }

int num_threads() { return g_threads.load(); }

void parallel_for(int begin, int end, const std::function<void(int)>& body) {
  const int n = end - begin;
  if (n <= 0) return;
  const int workers = std::min(num_threads(), n);
  if (workers <= 1 || n < 256) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = begin + w * chunk;
    const int hi = std::min(lo + chunk, end);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detgp
