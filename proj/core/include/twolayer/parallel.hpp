#pragma once

#include <cstddef>
#include <functional>

namespace twolayer {

/// Number of workers to use when the caller passes 0.
unsigned default_threads();

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = default). Each
/// index is processed exactly once; the first exception thrown is rethrown
/// after all workers stop.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace twolayer
