#pragma once

#include <cstddef>
#include <functional>

namespace gcarpa::bench {

/// Runs body(i) for i in [0, count) on up to `workers` threads (0 = hardware
/// concurrency). The first exception thrown by any task is rethrown after all
/// workers have joined.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body);

}  // namespace gcarpa::bench
