#ifndef SCNMINE_PARALLEL_HPP
#define SCNMINE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace scn {

/// Effective worker count: explicit value, or hardware concurrency when 0,
/// overridden by the SCN_THREADS environment variable when set.
int resolve_threads(int requested);

/// Runs body(i) for i in [0, n). Each index must write only to its own
/// output slot so results are independent of scheduling.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace scn

#endif
