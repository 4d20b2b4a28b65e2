#include "polyrecon/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include "polyrecon/codes.hpp"
#include "polyrecon/poly.hpp"

namespace polyrecon::bench {

namespace {

double quantile(std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    // Nearest rank.
    const auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size())));
    return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
    if (config.samples == 0)
        throw std::invalid_argument("bench needs at least one sample per rung");
    std::vector<BenchRow> rows;
    for (std::size_t rung = 0; rung < config.ladder.size(); ++rung) {
        const std::size_t n = config.ladder[rung];
        if (n < 4)
            throw std::invalid_argument("bench rungs need n >= 4");
        std::mt19937_64 rng(config.seed ^ (0x9e3779b97f4a7c15ULL * (rung + 1)));

        BenchRow row;
        row.n = n;
        std::vector<double> times;
        times.reserve(config.samples);
        for (std::size_t i = 0; i < config.warmup + config.samples; ++i) {
            const auto word = codes::random_sr(n, rng).reversed();
            const auto f = f_of(word);
            const auto start = std::chrono::steady_clock::now();
            const auto report = reconstruct(f, config.options);
            const auto stop = std::chrono::steady_clock::now();
            if (i < config.warmup)
                continue;
            times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
            row.backtracks += report.backtracks;
            if (report.results.size() != 1 || report.results.front().string != word)
                ++row.failures;
        }
        row.median_ms = quantile(times, 0.5);
        row.p95_ms = quantile(times, 0.95);
        rows.push_back(row);
    }
    return rows;
}

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
    os << "n,median_ms,p95_ms,backtracks\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.median_ms << ',' << r.p95_ms << ',' << r.backtracks << '\n';
}

}  // namespace polyrecon::bench
