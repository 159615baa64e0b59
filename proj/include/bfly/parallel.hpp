#pragma once

#include <cstdint>
#include <functional>

namespace bfly {

// Effective worker count: `requested` if nonzero, else the BUTTERFLY_WORKERS
// environment variable, else hardware concurrency (min 1).
unsigned resolve_workers(unsigned requested);

// Splits [begin, end) into up to `workers` contiguous chunks and runs
// fn(chunk_index, lo, hi) on each, in parallel when workers > 1. Callers keep
// per-chunk state and merge it in chunk order (or commutatively), so results
// never depend on scheduling.
void parallel_chunks(std::uint64_t begin, std::uint64_t end, unsigned workers,
                     const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn);

}  // namespace bfly
