#include "fracbern/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace fracbern {

void configure_threads_from_env() {
    const char* raw = std::getenv("FRACBERN_THREADS");
    if (raw == nullptr) return;
    try {
        const int n = std::stoi(raw);
        if (n > 0) omp_set_num_threads(n);
    } catch (const std::exception&) {
        // Unparseable values fall back to the OpenMP default.
    }
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace fracbern
