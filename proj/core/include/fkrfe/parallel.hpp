#pragma once

#include <cstddef>
#include <functional>

namespace fkrfe {

// 0 or negative -> all hardware threads.
int resolve_threads(int requested);

// Runs fn(i) for i in [0, count). Work items must write only to their own
// output slots; scheduling order is unspecified but results must not depend
// on it. With threads <= 1 everything runs on the calling thread.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace fkrfe
