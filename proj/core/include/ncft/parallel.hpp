#pragma once

#include <cstddef>
#include <functional>

namespace ncft {

/// Worker cap from NCFT_THREADS (default 1, clamped to [1, hardware]).
unsigned thread_count();

/// Runs body(i) for i in [0, n). Work items must write only to their own
/// slot; results are then reduced by the caller in index order, so output
/// does not depend on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ncft
