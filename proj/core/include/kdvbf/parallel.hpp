#pragma once

#include <functional>

namespace kdvbf {

/// Worker cap: FLOQUET_KDVBF_THREADS when set to a positive integer,
/// otherwise the number of available cores.
int worker_count();

/// Runs body(0..n-1) across workers. Indices are claimed atomically, results
/// land wherever the body writes them, and the first exception thrown by any
/// worker is rethrown on the calling thread after all workers join.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace kdvbf
