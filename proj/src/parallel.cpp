#include "todalab/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace todalab {

int thread_count() {
  if (const char* env = std::getenv("TODALAB_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
      // fall through to the default
    }
  }
  return omp_get_max_threads();
}

}  // namespace todalab
