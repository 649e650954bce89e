#ifndef WAVEQED_PARALLEL_HPP
#define WAVEQED_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace waveqed {

/// Threads used by parallel_for: explicit setting > WAVEQED_THREADS env >
/// hardware concurrency. Results are written to disjoint slots by index, so
/// numeric output never depends on the thread count.
void set_thread_count(int n);
int thread_count();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace waveqed

#endif
