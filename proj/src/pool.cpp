#include "rmlmc/pool.hpp"

#include <algorithm>
#include <chrono>

namespace rmlmc {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t k = v.size() / 2;
    return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

struct TimedRun {
    double wall_seconds = 0.0;
    double max_task_seconds = 0.0;
};

TimedRun timed_run(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& task) {
    std::atomic<std::uint64_t> max_task_ns{0};
    auto wrapped = [&](std::size_t i) -> int {
        auto t0 = Clock::now();
        task(i);
        auto ns = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count());
        std::uint64_t prev = max_task_ns.load();
        while (ns > prev && !max_task_ns.compare_exchange_weak(prev, ns)) {
        }
        return 0;
    };
    auto t0 = Clock::now();
    parallel_map<int>(n, workers, wrapped);
    auto t1 = Clock::now();
    TimedRun r;
    r.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    r.max_task_seconds = static_cast<double>(max_task_ns.load()) * 1e-9;
    return r;
}

}  // namespace

ScalingReport benchmark_scaling(const std::vector<unsigned>& worker_counts, std::size_t n,
                                const std::function<void(std::size_t)>& task, int repetitions) {
    if (worker_counts.empty()) throw std::invalid_argument("benchmark_scaling: empty worker list");
    for (unsigned w : worker_counts)
        if (w == 0) throw std::invalid_argument("benchmark_scaling: worker counts must be >= 1");
    if (repetitions < 1) throw std::invalid_argument("benchmark_scaling: repetitions must be >= 1");

    auto measure = [&](unsigned workers) {
        std::vector<double> walls;
        double max_task = 0.0;
        for (int r = 0; r < repetitions; ++r) {
            TimedRun run = timed_run(n, workers, task);
            walls.push_back(run.wall_seconds);
            max_task = std::max(max_task, run.max_task_seconds);
        }
        return std::pair<double, double>(median(std::move(walls)), max_task);
    };

    ScalingReport report;
    report.n = n;
    report.worker_counts = worker_counts;

    double serial_median = -1.0;
    std::vector<std::pair<double, double>> results;
    results.reserve(worker_counts.size());
    for (unsigned w : worker_counts) {
        results.push_back(measure(w));
        if (w == 1) serial_median = results.back().first;
    }
    if (serial_median < 0.0) serial_median = measure(1).first;

    for (std::size_t i = 0; i < worker_counts.size(); ++i) {
        report.wall_seconds.push_back(results[i].first);
        report.max_task_seconds.push_back(results[i].second);
        report.speedup.push_back(serial_median / results[i].first);
        report.efficiency.push_back(report.speedup.back() / worker_counts[i]);
    }
    return report;
}

}  // namespace rmlmc
