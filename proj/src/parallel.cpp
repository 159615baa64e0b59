#include "bfly/parallel.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace bfly {

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BUTTERFLY_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void parallel_chunks(std::uint64_t begin, std::uint64_t end, unsigned workers,
                     const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn) {
  if (end <= begin) return;
  const std::uint64_t total = end - begin;
  std::uint64_t nchunks = workers == 0 ? 1 : workers;
  if (nchunks > total) nchunks = total;
  if (nchunks <= 1) {
    fn(0, begin, end);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nchunks);
  for (std::uint64_t c = 0; c < nchunks; ++c) {
    const std::uint64_t lo = begin + total * c / nchunks;
    const std::uint64_t hi = begin + total * (c + 1) / nchunks;
    pool.emplace_back([&fn, c, lo, hi] { fn(static_cast<unsigned>(c), lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace bfly
