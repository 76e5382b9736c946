#pragma once

#include <cstddef>
#include <functional>

namespace dejean {

/// Worker count used when a caller passes jobs = 0. Starts from the
/// DEJEAN_JOBS environment variable, else the hardware concurrency.
unsigned default_jobs();
void set_default_jobs(unsigned jobs);

/// Runs body(i) for i in [0, count) on up to `jobs` threads. Callers write
/// results into per-index slots, so output never depends on the schedule.
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body);

}  // namespace dejean
