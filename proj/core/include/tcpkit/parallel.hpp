#pragma once

#include <cstddef>
#include <functional>

namespace tcpkit {

/// Upper bound on concurrent workers used by multistart searches.
/// Defaults to the TCPKIT_THREADS environment variable, falling back to
/// the hardware concurrency. Results never depend on the cap: work is
/// indexed and merged in index order.
int worker_cap();
void set_worker_cap(int cap);

namespace detail {

/// Runs body(0..count-1) on up to worker_cap() threads. Exceptions from
/// workers are rethrown on the calling thread (first one wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace detail
}  // namespace tcpkit
