#pragma once

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace hlrs {

// Every data-parallel kernel in the library accepts one of these. The serial
// path is a plain loop kept as the reference implementation; the parallel
// path must produce bit-identical results (per-item work only, deterministic
// reductions).
enum class Exec { serial, parallel };

inline int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace hlrs
