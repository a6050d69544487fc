#include "mgoe/parallel.hpp"

#include "mgoe/errors.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mgoe {

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (count < 0)
        throw ContractError("parallel_for: count must be non-negative");
    if (threads < 1)
        throw ContractError("parallel_for: threads must be positive");
    if (count == 0)
        return;

    if (threads == 1 || count == 1) {
        for (int i = 0; i < count; ++i)
            fn(i);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        }
    };

    const int n_workers = std::min(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();

    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace mgoe
