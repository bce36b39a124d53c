#pragma once

#include <cstddef>
#include <functional>

namespace gemdiff {

/// Resolve a requested thread count: values >= 1 are taken as-is, anything
/// else falls back to the GEMDIFF_THREADS environment variable and then to
/// hardware concurrency.
int resolve_threads(int requested);

/// Run body(i) for i in [0, n) on up to `threads` workers. Tasks are handed
/// out by index; results must be written to per-index slots so that the
/// outcome is identical for every thread count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace gemdiff
