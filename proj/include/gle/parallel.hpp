#pragma once

#include <cstddef>
#include <functional>

namespace gle {

// Worker count: GLE_SPECTRA_THREADS if set to a positive integer, else hardware concurrency.
unsigned thread_budget();

// Runs body(i) for i in [0, n) across up to thread_budget() threads; rethrows the first exception.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gle
