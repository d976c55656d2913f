#pragma once

#include <cstddef>
#include <functional>

namespace stlmine::app {

/// Calls task(i) for every i in [0, count) on up to `jobs` threads. Tasks
/// must write only to their own slot of any shared output. The first
/// exception thrown by a task is rethrown after all threads finish.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& task);

}  // namespace stlmine::app
