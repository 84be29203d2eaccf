// Minimal thread helper. HAARLAB_THREADS caps the worker count; results must
// be written by index so output stays deterministic under any thread count.
#pragma once

#include <cstddef>
#include <functional>

namespace haarlab {

unsigned thread_budget();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace haarlab
