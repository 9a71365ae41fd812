#pragma once

#include <functional>

namespace thermowit {

/// Worker count for sweep fan-out: THERMOWIT_THREADS when set (0 = auto),
/// otherwise the hardware concurrency, clamped to [1, 64].
int worker_count();

/// Order-preserving parallel map: f(i) for i in [0, n); each index writes
/// only its own output slot, so results are deterministic.
void parallel_for(int n, const std::function<void(int)>& f);

}  // namespace thermowit
