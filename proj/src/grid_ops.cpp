#include "growthlab/grid_ops.hpp"

#include <cstdlib>

namespace growthlab {

int worker_cap() {
    static const int cap = [] {
        const char* env = std::getenv("GROWTHLAB_THREADS");
        if (!env) return 0;
        const int v = std::atoi(env);
        return v > 0 ? v : 0;
    }();
    return cap;
}

int effective_workers() {
#ifdef _OPENMP
    const int hw = omp_get_max_threads();
    const int cap = worker_cap();
    return cap > 0 ? std::min(cap, hw) : hw;
#else
    return 1;
#endif
}

bool parallel_default() {
#ifdef _OPENMP
    return effective_workers() > 1;
#else
    return false;
#endif
}

} // namespace growthlab
