#include "ivlingam/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <string_view>
#include <thread>
#include <vector>

namespace ivlingam {

namespace {

std::atomic<std::size_t> g_thread_limit{0};
thread_local bool t_inside_parallel = false;

std::size_t env_limit() {
    const char* raw = std::getenv("IVLINGAM_THREADS");
    if (raw == nullptr) return 0;
    std::string_view text(raw);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return 0;
    return value;
}

}  // namespace

std::size_t worker_count() {
    std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    std::size_t limit = g_thread_limit.load();
    if (limit == 0) limit = env_limit();
    return limit == 0 ? hw : limit;
}

void set_thread_limit(std::size_t limit) { g_thread_limit.store(limit); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    const std::size_t workers = t_inside_parallel ? 1 : std::min(worker_count(), count);

    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        const bool was_inside = t_inside_parallel;
        t_inside_parallel = true;
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        t_inside_parallel = was_inside;
    };

    if (workers <= 1) {
        drain();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(drain);
        drain();
    }

    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace ivlingam
