// Minimal fork-join helper. Work items are split into contiguous blocks so
// callers can merge per-block results in index order, which keeps output
// independent of the thread count.

#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace thmc {

/// Resolves a requested thread count: 0 means THMC_THREADS, else hardware.
unsigned resolve_threads(unsigned requested);

/// Calls fn(block, begin, end) for `blocks` contiguous ranges covering
/// [0, n), using up to `threads` workers. Exceptions are rethrown.
void parallel_blocks(std::size_t n, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

/// Number of blocks parallel_blocks will use.
std::size_t block_count(std::size_t n, unsigned threads);

}  // namespace thmc
