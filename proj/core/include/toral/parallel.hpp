#pragma once

#include <cstddef>
#include <functional>

namespace toral {

/// Worker thread count used by the internal block-parallel loops. Defaults to
/// std::thread::hardware_concurrency(). Results never depend on this value:
/// work is split into fixed blocks and reduced in block order.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(b) for b in [0, blocks). Blocks may run concurrently.
void parallel_blocks(std::size_t blocks, const std::function<void(std::size_t)>& body);

}  // namespace toral
