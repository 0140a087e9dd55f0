#pragma once

#include <cstddef>
#include <functional>

namespace rht {

/// Worker count for parallel sections. Resolution order: explicit
/// set_thread_count, then the RHT_THREADS environment variable, then 1.
int thread_count();
void set_thread_count(int n);

/// Runs fn(i) for i in [0, n). Work is chunked across threads; results must
/// be written to per-index slots so the outcome is identical for any count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace rht
