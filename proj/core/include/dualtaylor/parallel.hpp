#pragma once

#include <cstddef>
#include <functional>

namespace dualtaylor {

// Worker-count cap shared by all parallel loops. Never changes results:
// work is split into chunks whose boundaries depend only on the problem
// size, each chunk writes to its own slots, and reductions combine chunk
// results in index order.
void set_max_threads(int n);
int max_threads();

// Runs body(begin, end) over [0, n) in fixed-size chunks. The chunking is
// independent of the thread count.
void parallel_for(std::size_t n, std::size_t chunk,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace dualtaylor
