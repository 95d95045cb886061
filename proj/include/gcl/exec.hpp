#pragma once

#include <exception>
#include <type_traits>
#include <vector>

#include <omp.h>

namespace gcl {

// jobs <= 1 runs the serial reference loop; results are index-addressed so
// the output never depends on scheduling.
template <class F>
auto parallel_map(std::size_t n, F&& f, int jobs) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out(n);
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (long i = 0; i < (long)n; ++i) {
    try {
      out[i] = f((std::size_t)i);
    } catch (...) {
#pragma omp critical(gcl_parallel_map_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

inline int default_jobs() { return omp_get_max_threads(); }

}  // namespace gcl
