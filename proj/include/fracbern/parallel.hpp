#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace fracbern {

/// How data-parallel loops run. `serial` is the reference path used by the
/// tests to check the OpenMP path; both must produce identical results.
enum class Execution { serial, parallel };

/// Applies the FRACBERN_THREADS cap (0 or unset = OpenMP default).
void configure_threads_from_env();
int max_threads();

/// out[i] = fn(i) for i in [0, n). Each index is written exactly once, so the
/// output does not depend on scheduling. The first exception thrown by any
/// iteration is rethrown after the loop.
template <class Fn>
std::vector<double> map_indices(std::size_t n, Fn&& fn, Execution exec = Execution::parallel) {
    std::vector<double> out(n);
    if (exec == Execution::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::exception_ptr failure;
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(fracbern_map_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace fracbern
