#pragma once

#include <cstddef>

namespace fneq {

/// Caps worker threads for parallel loops; 0 restores the runtime default.
void set_thread_limit(int threads);

/// Reads FNEQ_THREADS (0 or unset = auto) and applies it.
void apply_thread_env();

int thread_limit();

} // namespace fneq
