#pragma once

#include <cstddef>
#include <functional>

namespace lamnorm {

// Runs fn on a thread with a large stack. The HOAS normalizers recurse once
// per beta step, so divergence bounded by a 10^5 fuel budget needs far more
// than the default 8 MiB thread stack.
int run_on_big_stack(const std::function<int()>& fn,
                     std::size_t stack_bytes = std::size_t{1} << 30);

} // namespace lamnorm
