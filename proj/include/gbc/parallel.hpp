#ifndef GBC_PARALLEL_HPP
#define GBC_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace gbc {

/// Runs body(i) for i in [0, count) on up to `threads` workers using static
/// contiguous chunks. Distance evaluations made by workers are added to the
/// calling thread's counter after the join. body must only write to slots
/// owned by index i.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

/// Thread count from the GBC_THREADS environment variable, or 1 when unset
/// or unparsable.
std::size_t default_thread_count();

}  // namespace gbc

#endif  // GBC_PARALLEL_HPP
