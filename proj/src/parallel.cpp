#include "nls/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nls {

namespace {
std::atomic<int> g_threads{0};
}

void set_thread_count(int n) { g_threads.store(n < 0 ? 0 : n); }

int thread_count() {
#ifdef _OPENMP
    const int req = g_threads.load();
    return req > 0 ? req : omp_get_max_threads();
#else
    return 1;
#endif
}

void parallel_for(int n, const std::function<void(int)>& body) {
#ifdef _OPENMP
    std::exception_ptr first_error = nullptr;
    std::mutex error_mutex;
    const int nt = thread_count();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (int i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
#else
    serial_for(n, body);
#endif
}

void serial_for(int n, const std::function<void(int)>& body) {
    for (int i = 0; i < n; ++i) body(i);
}

}  // namespace nls
