#pragma once

#include <cstddef>
#include <functional>

namespace gspan {

// Execution mode for the embarrassingly parallel verifier grids. Every grid
// writes slot i of a pre-sized result vector from iteration i only, so both
// modes produce identical results; the serial path is the reference the
// tests compare against.
enum class ExecMode { Serial, Parallel };

// Runs fn(0..n-1). Parallel uses OpenMP when compiled in, else falls back
// to the serial loop.
void for_each_index(std::size_t n, ExecMode mode,
                    const std::function<void(std::size_t)>& fn);

bool openmp_enabled();

}  // namespace gspan
