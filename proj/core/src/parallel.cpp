#include "modphi/parallel.hpp"

#include <atomic>
#include <thread>

namespace modphi {

void parallel_for_blocks(std::size_t num_blocks, int workers,
                         const std::function<void(std::size_t)>& fn) {
    if (workers <= 0) workers = int(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (workers == 1 || num_blocks <= 1) {
        for (std::size_t b = 0; b < num_blocks; ++b) fn(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (;;) {
            std::size_t b = next.fetch_add(1);
            if (b >= num_blocks) return;
            fn(b);
        }
    };
    std::vector<std::thread> pool;
    int n = std::min<std::size_t>(workers, num_blocks);
    pool.reserve(n);
    for (int i = 0; i < n; ++i) pool.emplace_back(body);
    for (auto& t : pool) t.join();
}

McAccumulator mc_run(long long samples, std::uint64_t seed, int workers,
                     const std::function<void(std::uint64_t, long long,
                                              McAccumulator&)>& block_fn) {
    (void)seed;
    std::size_t num_blocks = std::size_t((samples + mc_block_size - 1) / mc_block_size);
    std::vector<McAccumulator> partial(num_blocks);
    parallel_for_blocks(num_blocks, workers, [&](std::size_t b) {
        long long lo = (long long)b * mc_block_size;
        long long n = std::min(mc_block_size, samples - lo);
        block_fn(b, n, partial[b]);
    });
    McAccumulator total;
    for (const auto& p : partial) {
        total.sum += p.sum;
        total.sum_sq += p.sum_sq;
        total.wsum += p.wsum;
        total.wsum_sq += p.wsum_sq;
        total.count += p.count;
    }
    return total;
}

}  // namespace modphi
