#pragma once

#include <cstddef>
#include <functional>

namespace qdc {

/// Thread count from QDC_THREADS, else hardware concurrency (at least 1).
int default_thread_count();

/// Calls body(i) for every i in [0, n) on up to `threads` workers. Indices are
/// handed out dynamically; callers write results into slot i so the outcome
/// does not depend on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace qdc
