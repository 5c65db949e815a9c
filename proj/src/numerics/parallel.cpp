#include "casimir/numerics/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace casimir::numerics {

namespace {

std::atomic<unsigned> g_override{0};

unsigned default_threads()
{
    static const unsigned n = [] {
        if (const char* env = std::getenv("CASIMIR_THREADS")) {
            try {
                const long v = std::stol(env);
                if (v >= 1)
                    return static_cast<unsigned>(v);
            } catch (...) {
            }
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }();
    return n;
}

}  // namespace

unsigned worker_threads()
{
    const unsigned o = g_override.load();
    return o != 0 ? o : default_threads();
}

void set_worker_threads(unsigned n) { g_override.store(n); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
    const std::size_t workers = std::min<std::size_t>(worker_threads(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t)
        pool.emplace_back(work);
    work();
    for (auto& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

}  // namespace casimir::numerics
