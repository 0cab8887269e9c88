#include "tcpkit/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tcpkit {

namespace {

int default_cap() {
  if (const char* env = std::getenv("TCPKIT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::atomic<int> g_cap{0};  // 0 = not set yet, resolve lazily

}  // namespace

int worker_cap() {
  int c = g_cap.load(std::memory_order_relaxed);
  if (c <= 0) {
    c = default_cap();
    g_cap.store(c, std::memory_order_relaxed);
  }
  return c;
}

void set_worker_cap(int cap) { g_cap.store(cap > 0 ? cap : 1, std::memory_order_relaxed); }

namespace detail {

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(worker_cap()), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail
}  // namespace tcpkit
