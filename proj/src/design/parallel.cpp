#include <algorithm>
#include <cstdlib>
#include <string>

#include "thmc/parallel.hpp"

namespace thmc {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("THMC_THREADS"); env != nullptr) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::size_t block_count(std::size_t n, unsigned threads) {
  if (n == 0) return 0;
  return std::min<std::size_t>(n, std::max(1u, threads));
}

void parallel_blocks(std::size_t n, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  const std::size_t blocks = block_count(n, threads);
  if (blocks == 0) return;
  auto bounds = [&](std::size_t b) { return b * n / blocks; };
  if (blocks == 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t b = 0; b < blocks; ++b) {
    pool.emplace_back([&, b] {
      try {
        fn(b, bounds(b), bounds(b + 1));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace thmc
