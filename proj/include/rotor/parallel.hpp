#ifndef ROTOR_PARALLEL_HPP
#define ROTOR_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace rotor {

/// Worker count for kernels: ROTOR_NUM_THREADS if set and positive,
/// otherwise the hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Each index is processed exactly once;
/// callers must only write to per-index storage so results do not depend on
/// scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace rotor

#endif
