#pragma once

#include <cstdint>
#include <functional>

namespace asymparb {

/// Worker cap: ASYMPARB_THREADS when set, hardware concurrency otherwise.
int worker_count();

/// Runs fn(i) for i in [0, count) across at most worker_count() threads.
/// Work items must be independent; callers merge any results themselves in
/// index order so the outcome never depends on the thread count.
void parallel_for(int count, const std::function<void(int)>& fn);

/// splitmix64 step; used to derive independent per-batch RNG seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace asymparb
