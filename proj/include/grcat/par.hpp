#ifndef GRCAT_PAR_HPP
#define GRCAT_PAR_HPP

#include <cstddef>

#ifdef GRCAT_OPENMP
#include <omp.h>
#endif

namespace grcat::par {

inline int max_jobs = 0;  // 0 = OpenMP default; set once by the CLI

inline void set_jobs(int n) {
    max_jobs = n;
#ifdef GRCAT_OPENMP
    if (n > 0) omp_set_num_threads(n);
#endif
}

/* Static-schedule parallel loop.  Bodies must only write to slots indexed by
 * their own iteration so results do not depend on the thread count. */
template <class F>
void for_n(std::ptrdiff_t n, F&& body) {
#ifdef GRCAT_OPENMP
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
#else
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace grcat::par

#endif
