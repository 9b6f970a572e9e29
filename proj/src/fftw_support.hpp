#pragma once

#include <mutex>

namespace rossby::detail {

/// FFTW's planner is not reentrant; every plan create/destroy takes this lock.
std::mutex& fftw_planner_mutex();

}  // namespace rossby::detail
