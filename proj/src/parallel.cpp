#include "dntau/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace dntau {

namespace {
std::atomic<size_t> g_override{0};
}

size_t worker_count() {
  if (size_t o = g_override.load()) return o;
  if (const char* env = std::getenv("DNTAU_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<size_t>(v);
    } catch (...) {
    }
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

void set_worker_count(size_t n) { g_override.store(n); }

void parallel_for(size_t n, const std::function<void(size_t)>& f) {
  size_t w = std::min(worker_count(), n);
  if (w <= 1) {
    for (size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errs(n);
  std::atomic<size_t> next{0};
  auto body = [&] {
    for (size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        f(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (size_t t = 1; t < w; ++t) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace dntau
