#ifndef PROPALG_SWEEP_HPP
#define PROPALG_SWEEP_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace propalg {

/// Worker count used by quantifier sweeps: the --threads override when
/// set, else PROPALG_THREADS, else the hardware count.
unsigned sweep_threads();
void set_sweep_threads(unsigned n); // 0 = automatic

/// Least index i < count with violates(i), or nullopt.  The reduction is
/// a minimum over fixed chunks, so the result (and hence every witness)
/// does not depend on scheduling or thread count.  `violates` must be
/// safe to call concurrently.
template <class Pred>
std::optional<std::uint64_t> find_first_violation(std::uint64_t count, Pred&& violates) {
    const unsigned threads = sweep_threads();
    constexpr std::uint64_t kChunk = 1u << 14;
    if (threads <= 1 || count <= 2 * kChunk) {
        for (std::uint64_t i = 0; i < count; ++i)
            if (violates(i)) return i;
        return std::nullopt;
    }

    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> best{UINT64_MAX};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto worker = [&] {
        try {
            while (true) {
                const std::uint64_t start = next.fetch_add(kChunk);
                if (start >= count || start >= best.load(std::memory_order_relaxed)) break;
                const std::uint64_t end = std::min(count, start + kChunk);
                for (std::uint64_t i = start; i < end; ++i) {
                    if (i >= best.load(std::memory_order_relaxed)) break;
                    if (violates(i)) {
                        std::uint64_t cur = best.load();
                        while (i < cur && !best.compare_exchange_weak(cur, i)) {
                        }
                        break;
                    }
                }
                if (failed.load(std::memory_order_relaxed)) break;
            }
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed.load()) std::rethrow_exception(failure);

    const std::uint64_t found = best.load();
    if (found == UINT64_MAX) return std::nullopt;
    return found;
}

} // namespace propalg

#endif
