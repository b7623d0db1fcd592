#pragma once

namespace balk1 {

/// Serial runs the reference loop; Parallel runs the OpenMP version of the same kernel.
enum class Exec { Serial, Parallel };

/// Thread count for parallel kernels: BALK1_THREADS if set and positive, otherwise the
/// OpenMP default.
int thread_count();

}  // namespace balk1
