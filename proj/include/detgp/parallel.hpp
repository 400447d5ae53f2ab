#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace detgp {

// Process-wide worker count for row-parallel loops. 1 disables threading.
void set_num_threads(int n);
int num_threads();

// Splits [begin, end) into contiguous chunks, one thread per chunk.
// Each index is processed by exactly one thread in ascending order within
// its chunk, so results never depend on the thread count.
void parallel_for(int begin, int end, const std::function<void(int)>& body);

}  // namespace detgp
