#include "dspca/threading.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>

#include <omp.h>

extern "C" void openblas_set_num_threads(int);

namespace dspca::threading {

int max_threads() {
    static const int cached = [] {
        int n = omp_get_max_threads();
        if (const char* env = std::getenv("DSPCA_MAX_THREADS")) {
            int cap = std::atoi(env);
            if (cap >= 1) n = std::min(n, cap);
        }
        return std::max(n, 1);
    }();
    return cached;
}

void cap_blas_threads() {
    static std::once_flag flag;
    std::call_once(flag, [] { openblas_set_num_threads(max_threads()); });
}

bool use_parallel(std::size_t work) {
    return max_threads() > 1 && work >= 16384;
}

} // namespace dspca::threading
