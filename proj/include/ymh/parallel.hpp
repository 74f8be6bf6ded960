#pragma once

#include <cstddef>
#include <cstdlib>

#ifdef YMH_HAVE_OPENMP
#include <omp.h>
#endif

namespace ymh {

/// Thread cap for the site-parallel kernels.  Reads YMH_THREADS once; 0 or
/// unset means "whatever OpenMP gives us".  Setting it to 1 forces the
/// serial path, which the tests use as a reference.
int thread_cap();
void set_thread_cap(int threads);

/// Site loop over [0, count).  Every site is written independently, so the
/// parallel and serial paths produce bit-identical results.
template <class F>
void for_sites(std::size_t count, F&& body) {
#ifdef YMH_HAVE_OPENMP
  const int cap = thread_cap();
  if (cap != 1) {
#pragma omp parallel for schedule(static) num_threads(cap > 0 ? cap : omp_get_max_threads())
    for (long long i = 0; i < static_cast<long long>(count); ++i)
      body(static_cast<std::size_t>(i));
    return;
  }
#endif
  for (std::size_t i = 0; i < count; ++i) body(i);
}

/// Serial reference loop, kept separate so benchmarks and tests can compare
/// against the OpenMP path explicitly.
template <class F>
void for_sites_serial(std::size_t count, F&& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace ymh
