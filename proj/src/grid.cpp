#include "gspan/grid.hpp"

#include <cstdint>

namespace gspan {

void for_each_index(std::size_t n, ExecMode mode,
                    const std::function<void(std::size_t)>& fn) {
#ifdef _OPENMP
  if (mode == ExecMode::Parallel) {
    const std::int64_t m = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < m; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)mode;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace gspan
