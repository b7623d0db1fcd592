#include "balk1/exec.hpp"

#include <omp.h>

#include <cstdlib>

namespace balk1 {

int thread_count() {
    if (const char* env = std::getenv("BALK1_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return omp_get_max_threads();
}

}  // namespace balk1
