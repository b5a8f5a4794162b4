#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace modphi {

/// Runs `fn(block_index)` for block_index in [0, num_blocks) over a pool of
/// `workers` threads (0 = hardware concurrency). Blocks are claimed from an
/// atomic counter, so any partition of work is possible, but callers must
/// write results keyed by block index: reductions done in block order are
/// then identical for every worker count.
void parallel_for_blocks(std::size_t num_blocks, int workers,
                         const std::function<void(std::size_t)>& fn);

/// Monte Carlo driver: `samples` draws are partitioned into fixed-size
/// blocks; block b uses an independent SplitRng stream derived from
/// (seed, b), and per-block partial results are reduced in block order.
/// The estimate is therefore bit-identical for a fixed seed, independent
/// of the worker count.
struct McAccumulator {
    double sum = 0.0;      // sum of f
    double sum_sq = 0.0;   // sum of f^2
    double wsum = 0.0;     // sum of weights
    double wsum_sq = 0.0;  // sum of weights^2
    long long count = 0;
};

McAccumulator mc_run(long long samples, std::uint64_t seed, int workers,
                     const std::function<void(std::uint64_t block,
                                              long long block_samples,
                                              McAccumulator&)>& block_fn);

inline constexpr long long mc_block_size = 4096;

}  // namespace modphi
