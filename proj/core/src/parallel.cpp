#include "fneq/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef FNEQ_HAVE_OPENMP
#include <omp.h>
#endif

namespace fneq {

namespace {
int g_default_threads = 0;
}

void set_thread_limit(int threads) {
#ifdef FNEQ_HAVE_OPENMP
    if (g_default_threads == 0) {
        g_default_threads = omp_get_max_threads();
    }
    omp_set_num_threads(threads > 0 ? threads : g_default_threads);
#else
    (void)threads;
#endif
}

void apply_thread_env() {
    const char* env = std::getenv("FNEQ_THREADS");
    if (env == nullptr || *env == '\0') {
        return;
    }
    try {
        set_thread_limit(std::stoi(env));
    } catch (const std::exception&) {
        // Unparseable values fall back to the runtime default.
    }
}

int thread_limit() {
#ifdef FNEQ_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace fneq
