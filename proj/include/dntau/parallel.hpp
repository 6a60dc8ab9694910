#pragma once

#include <cstddef>
#include <functional>

namespace dntau {

// Worker count: DNTAU_THREADS if set (>=1), otherwise hardware concurrency.
size_t worker_count();
// Override for tests; 0 restores the environment/default behaviour.
void set_worker_count(size_t n);

// Runs f(0..n-1) on up to worker_count() threads; returns after all finish.
// Exceptions from workers are rethrown (the first one by index).
void parallel_for(size_t n, const std::function<void(size_t)>& f);

}  // namespace dntau
