#pragma once

#include <cstddef>
#include <functional>

namespace phasecontract {

/// Worker count: hardware concurrency, capped by PHASE_CONTRACT_THREADS when set.
unsigned worker_count();

/// Calls body(i) for i in [0, count). Indices are split into contiguous
/// blocks across workers; each body(i) must write only its own output slot,
/// so results do not depend on scheduling. Exceptions from any worker are
/// rethrown on the calling thread (the first one by index block).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace phasecontract
