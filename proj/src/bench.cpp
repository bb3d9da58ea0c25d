#include "idq/bench.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <iterator>
#include <random>

#include "idq/random_instance.hpp"

namespace idq {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
    if (v.empty()) return 0;
    auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

// reported items; the scalar kinds report none
std::size_t output_size(const DictionaryIndex& index, QueryKind kind, Pos i, Pos j, volatile std::int64_t& sink) {
    switch (kind) {
        case QueryKind::kExists:
            sink = sink + index.exists(i, j);
            return 0;
        case QueryKind::kCount:
            sink = sink + index.count(i, j);
            return 0;
        case QueryKind::kCountDistinct:
            sink = sink + index.count_distinct(i, j);
            return 0;
        case QueryKind::kReport:
            return index.report(i, j).size();
        case QueryKind::kReportDistinct:
            return index.report_distinct(i, j).size();
    }
    return 0;
}

}  // namespace

std::vector<BenchResult> run_bench(std::span<const Pos> sizes, const BenchOptions& options) {
    struct Subject {
        std::mt19937_64 rng;
        DictionaryInput input;
        std::unique_ptr<DictionaryIndex> index;
    };
    std::vector<Subject> subjects;
    std::vector<BenchResult> results(sizes.size());
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        const Pos n = sizes[s];
        std::mt19937_64 rng(options.seed ^ (static_cast<std::uint64_t>(n) * 0x9e3779b97f4a7c15ULL));
        RandomInstanceOptions instance;
        instance.n = n;
        instance.alphabet = options.alphabet;
        instance.fragments = static_cast<std::size_t>(options.d_ratio * n);
        DictionaryInput input = random_instance(rng, instance);
        subjects.push_back(Subject{rng, std::move(input), nullptr});
        results[s].n = n;
    }

    // every repeat and round visits all sizes, so slow spells hit them alike
    for (int run = 0; run < std::max(1, options.build_repeats); ++run) {
        for (std::size_t s = 0; s < sizes.size(); ++s) {
            Subject& subject = subjects[s];
            subject.index.reset();
            auto start = Clock::now();
            subject.index = std::make_unique<DictionaryIndex>(subject.input.text, subject.input.fragments);
            results[s].build_runs_ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - start).count());
        }
    }
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        results[s].build_ms = *std::min_element(results[s].build_runs_ms.begin(), results[s].build_runs_ms.end());
        results[s].stats = subjects[s].index->stats();
        results[s].kinds.resize(std::size(kAllQueryKinds));
    }

    volatile std::int64_t sink = 0;
    std::vector<Span> spans(options.queries);
    for (int round = 0; round < std::max(1, options.query_rounds); ++round) {
        for (std::size_t s = 0; s < sizes.size(); ++s) {
            Subject& subject = subjects[s];
            const Pos n = sizes[s];
            std::uniform_int_distribution<Pos> length(1, std::min(n, options.max_span));
            for (Span& span : spans) {
                Pos len = length(subject.rng);
                Pos l = std::uniform_int_distribution<Pos>(1, n - len + 1)(subject.rng);
                span = Span{l, l + len - 1};
            }
            for (std::size_t k = 0; k < std::size(kAllQueryKinds); ++k) {
                const QueryKind kind = kAllQueryKinds[k];
                std::vector<double> ns;
                std::vector<double> per_item;
                double total_output = 0;
                for (const Span& span : spans) {
                    auto start = Clock::now();
                    std::size_t out = output_size(*subject.index, kind, span.l, span.r, sink);
                    double t = std::chrono::duration<double, std::nano>(Clock::now() - start).count();
                    ns.push_back(t);
                    per_item.push_back(t / (1.0 + static_cast<double>(out)));
                    total_output += static_cast<double>(out);
                }
                KindTiming timing{kind, median(ns), spans.empty() ? 0 : total_output / spans.size(),
                                  median(per_item)};
                KindTiming& best = results[s].kinds[k];
                if (round == 0 || timing.median_ns < best.median_ns) best = timing;
            }
        }
    }
    return results;
}

BenchResult run_bench(Pos n, const BenchOptions& options) { return run_bench(std::span<const Pos>(&n, 1), options).front(); }

}  // namespace idq
