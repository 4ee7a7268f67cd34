#pragma once

#include <cstddef>
#include <functional>

namespace ivlingam {

/// Worker threads used by parallel_for. Defaults to the hardware concurrency,
/// capped by the IVLINGAM_THREADS environment variable or set_thread_limit().
[[nodiscard]] std::size_t worker_count();

/// Overrides IVLINGAM_THREADS for this process; 0 restores the default.
void set_thread_limit(std::size_t limit);

/// Runs body(i) for every i in [0, count). Iterations must write only to their
/// own slot of any shared output. Nested calls run serially on the calling
/// worker. If iterations throw, the exception from the lowest index is
/// rethrown after all iterations finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ivlingam
