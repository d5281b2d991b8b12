#pragma once

#include <cstdint>
#include <functional>

namespace ergorisk::detail {

/// Worker count for internal parallel loops. ERGORISK_THREADS caps it (a
/// value of 1 forces serial execution); otherwise hardware concurrency.
/// Changing it never changes numeric results, only wall time.
int worker_count();

/// Runs body(i) for i in [0, n). Work is split into contiguous index ranges,
/// so any data written per-index is identical for every worker count.
/// Exceptions from the body are rethrown on the calling thread.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

}  // namespace ergorisk::detail
