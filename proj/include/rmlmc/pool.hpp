#ifndef RMLMC_POOL_HPP
#define RMLMC_POOL_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace rmlmc {

// Evaluates task(i) for i in [0,n) on `workers` threads, results stored by
// index. Tasks must be pure functions of their index (plus whatever derived
// rng stream they construct), so the result is independent of scheduling.
// A throwing task aborts the job; the lowest observed failing index is
// reported.
template <class T, class Task>
std::vector<T> parallel_map(std::size_t n, unsigned workers, Task&& task) {
    if (n == 0) throw std::invalid_argument("parallel_map: n must be >= 1");
    if (workers == 0) throw std::invalid_argument("parallel_map: workers must be >= 1");

    std::vector<T> results(n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                results[i] = task(i);
            } catch (const std::exception& e) {
                throw std::runtime_error("parallel_map: task " + std::to_string(i) + " failed: " + e.what());
            }
        }
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex error_mutex;
    std::size_t error_index = n;
    std::exception_ptr error;

    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n || stop.load()) return;
            try {
                results[i] = task(i);
            } catch (...) {
                stop.store(true);
                std::lock_guard<std::mutex> lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
                return;
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    if (error) {
        try {
            std::rethrow_exception(error);
        } catch (const std::exception& e) {
            throw std::runtime_error("parallel_map: task " + std::to_string(error_index) +
                                     " failed: " + e.what());
        }
    }
    return results;
}

// parallel_map followed by a reduction consumed strictly in index order, so
// the reduced value is bit-identical for any worker count.
template <class T, class R, class Task, class Fold>
R parallel_map_reduce(std::size_t n, unsigned workers, Task&& task, R init, Fold&& fold) {
    std::vector<T> results = parallel_map<T>(n, workers, std::forward<Task>(task));
    R acc = std::move(init);
    for (std::size_t i = 0; i < n; ++i) acc = fold(std::move(acc), results[i]);
    return acc;
}

struct ScalingReport {
    std::vector<unsigned> worker_counts;
    std::vector<double> wall_seconds;      // median over repetitions
    std::vector<double> speedup;           // serial median / parallel median
    std::vector<double> efficiency;        // speedup / workers
    std::vector<double> max_task_seconds;  // most expensive single task seen
    std::size_t n = 0;
};

// Strong-scaling measurement of a fixed workload of n tasks. Each
// configuration runs `repetitions` times; medians are reported. The serial
// reference is the workers=1 median (measured even if 1 is not in the list).
// The max single-task time bounds the achievable speedup and is reported to
// make saturation diagnosable.
ScalingReport benchmark_scaling(const std::vector<unsigned>& worker_counts, std::size_t n,
                                const std::function<void(std::size_t)>& task, int repetitions = 3);

}  // namespace rmlmc

#endif
