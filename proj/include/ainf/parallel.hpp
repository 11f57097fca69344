#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ainf {

/// Worker cap: AINF_JOBS environment variable, else hardware concurrency.
inline int max_parallelism() {
    if (const char* env = std::getenv("AINF_JOBS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs f(i) for i in [0, n).  Tasks must write only to caller-owned,
/// per-index slots; results are then deterministic in input order.
template <class F>
void parallel_for(int n, F&& f) {
    const int jobs = std::min(max_parallelism(), n);
    if (jobs <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
        threads.emplace_back([&, w] {
            for (int i = w; i < n; i += jobs) f(i);
        });
    }
    for (auto& t : threads) t.join();
}

}  // namespace ainf
