#pragma once

#include <cstddef>
#include <functional>

namespace sobogeo {

// Worker cap: SOBOGEO_THREADS if set, otherwise hardware concurrency.
int thread_cap();

// Runs fn(i) for i in [0, n). Tasks must be independent; results must not
// depend on scheduling. Exceptions are captured and rethrown in the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace sobogeo
