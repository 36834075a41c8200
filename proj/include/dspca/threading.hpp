#pragma once

#include <cstddef>

namespace dspca::threading {

// Effective thread cap for all internal kernels: the smaller of the OpenMP
// default and the DSPCA_MAX_THREADS environment variable (when set).
// Read once on first use.
int max_threads();

// Propagates the cap to the BLAS/LAPACK backend. Called lazily before the
// first LAPACK call; safe to call repeatedly.
void cap_blas_threads();

// True when a parallel kernel should be used for a workload of `work`
// elementary operations.
bool use_parallel(std::size_t work);

} // namespace dspca::threading
