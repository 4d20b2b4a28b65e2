#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "polyrecon/reconstruct.hpp"

namespace polyrecon::bench {

struct BenchConfig {
    std::vector<std::size_t> ladder{256, 512, 1024, 2048};
    std::size_t samples = 50;
    std::size_t warmup = 3;
    std::uint64_t seed = 1;
    ReconOptions options{};
};

struct BenchRow {
    std::size_t n = 0;
    double median_ms = 0;
    double p95_ms = 0;
    std::size_t backtracks = 0;  // summed over the rung's samples
    std::size_t failures = 0;    // samples not decoded to the singleton codeword
};

/// Times reconstruct over random P_n codewords, one row per rung. Inputs
/// depend only on the seed; every rung draws from its own stream.
std::vector<BenchRow> run_bench(const BenchConfig& config);

/// `n,median_ms,p95_ms,backtracks`, one line per rung.
void write_csv(std::ostream& os, const std::vector<BenchRow>& rows);

}  // namespace polyrecon::bench
