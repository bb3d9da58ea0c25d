#ifndef IDQ_BENCH_HPP_
#define IDQ_BENCH_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "idq/common.hpp"
#include "idq/dictionary_index.hpp"
#include "idq/io.hpp"

namespace idq {

struct BenchOptions {
    std::uint64_t seed = 1;
    double d_ratio = 1.0;         // fragments per text position
    int alphabet = 4;
    std::size_t queries = 2000;   // per kind and round
    int query_rounds = 1;         // fresh spans each round; a kind keeps its fastest round
    Pos max_span = 1024;
    int build_repeats = 1;        // build time is the fastest of these
};

struct KindTiming {
    QueryKind kind;
    double median_ns = 0;
    double mean_output = 0;       // reported items per query
    double median_ns_per_item = 0;  // of time / (1 + output)
};

struct BenchResult {
    Pos n = 0;
    double build_ms = 0;
    std::vector<double> build_runs_ms;
    BuildStats stats;
    std::vector<KindTiming> kinds;  // in kAllQueryKinds order
};

// Measures all sizes together, interleaving their builds and query rounds.
std::vector<BenchResult> run_bench(std::span<const Pos> sizes, const BenchOptions& options);
BenchResult run_bench(Pos n, const BenchOptions& options);

}  // namespace idq

#endif  // IDQ_BENCH_HPP_
