#ifndef NLS_PARALLEL_HPP
#define NLS_PARALLEL_HPP

#include <functional>

namespace nls {

// Thread-count control for the OpenMP drivers. 0 = library default.
void set_thread_count(int n);
int thread_count();

// OpenMP-parallel index loop. Bodies must be independent per index and write
// only to their own slots, so results are identical to the serial driver
// regardless of scheduling.
void parallel_for(int n, const std::function<void(int)>& body);

// Serial reference driver, kept for equivalence tests and benchmarking.
void serial_for(int n, const std::function<void(int)>& body);

}  // namespace nls

#endif
