#pragma once

#include <cstddef>
#include <functional>

namespace normalproj {

/// Worker count: NORMALPROJ_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
unsigned worker_count();

/// Calls body(i) for every i in [0, n), spread over up to worker_count()
/// threads. The first exception thrown by any call is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace normalproj
