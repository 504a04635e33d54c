#pragma once

namespace todalab {

/// Selects between the OpenMP kernel and its serial reference.
enum class Execution { Serial, Parallel };

/// Thread count for parallel kernels: TODALAB_THREADS if set and positive,
/// otherwise the OpenMP default.
int thread_count();

}  // namespace todalab
