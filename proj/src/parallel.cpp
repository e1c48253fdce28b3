#include "siltlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace siltlab {

namespace {
std::atomic<int> g_override{0};
}

int thread_count() {
    if (int o = g_override.load(); o > 0) {
        return o;
    }
    if (const char* env = std::getenv("SILTLAB_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n > 0) {
                return n;
            }
        } catch (const std::exception&) {
            // fall through to the default
        }
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_thread_count(int n) { g_override.store(n > 0 ? n : 0); }

} // namespace siltlab
