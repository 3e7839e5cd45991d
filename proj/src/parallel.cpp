#include "hypconst/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace hypconst {

int thread_budget() {
    if (const char* env = std::getenv("HYPCONST_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

std::vector<std::pair<std::int64_t, std::int64_t>> blocks(std::int64_t n) {
    const int workers =
        static_cast<int>(std::min<std::int64_t>(thread_budget(), std::max<std::int64_t>(n, 1)));
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    const std::int64_t chunk = (n + workers - 1) / workers;
    for (std::int64_t b = 0; b < n; b += chunk)
        out.emplace_back(b, std::min(n, b + chunk));
    return out;
}

}  // namespace

double parallel_max(std::int64_t n, double init,
                    const std::function<double(std::int64_t, std::int64_t)>&
                        chunk_max) {
    if (n <= 0) return init;
    const auto parts = blocks(n);
    if (parts.size() == 1) return std::max(init, chunk_max(0, n));

    std::vector<double> results(parts.size(), init);
    std::vector<std::thread> pool;
    pool.reserve(parts.size());
    for (size_t i = 0; i < parts.size(); ++i)
        pool.emplace_back([&, i] {
            results[i] = chunk_max(parts[i].first, parts[i].second);
        });
    for (auto& t : pool) t.join();

    double best = init;
    for (double r : results) best = std::max(best, r);
    return best;
}

void parallel_for(std::int64_t n,
                  const std::function<void(std::int64_t, std::int64_t)>& body) {
    if (n <= 0) return;
    const auto parts = blocks(n);
    if (parts.size() == 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(parts.size());
    for (const auto& [b, e] : parts)
        pool.emplace_back([&, b, e] { body(b, e); });
    for (auto& t : pool) t.join();
}

}  // namespace hypconst
