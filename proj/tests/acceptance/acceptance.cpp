// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Pass criterion numbers as arguments to run a subset.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "idq/bench.hpp"
#include "idq/dictionary_index.hpp"
#include "idq/oracle.hpp"
#include "idq/random_instance.hpp"
#include "idq/verify.hpp"

using namespace idq;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string format(double v, int digits = 2) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(digits);
    out << v;
    return out.str();
}

// one fragment per distinct substring, at its first occurrence
std::vector<Span> all_distinct_substrings(const std::string& text) {
    std::set<std::string> seen;
    std::vector<Span> out;
    const auto n = static_cast<Pos>(text.size());
    for (Pos l = 1; l <= n; ++l) {
        for (Pos r = l; r <= n; ++r) {
            if (seen.insert(text.substr(l - 1, r - l + 1)).second) out.push_back(Span{l, r});
        }
    }
    return out;
}

std::uint64_t check_instance(const std::string& text, const std::vector<Span>& fragments, std::uint64_t& mismatches,
                             std::string& first) {
    DictionaryIndex index(text, fragments);
    Oracle oracle(text, fragments);
    return verify_spans(index, oracle, all_spans(index.n()), [&](const Mismatch& m) {
        if (mismatches++ == 0) {
            first = std::string(kind_name(m.kind)) + " " + std::to_string(m.i) + " " + std::to_string(m.j) + " on " +
                    text + " engine=" + m.engine + " oracle=" + m.oracle;
        }
    });
}

Outcome exhaustive_micro_corpus() {
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t texts = 0;
    std::string first;
    for (Pos n = 1; n <= 10; ++n) {
        for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
            std::string text(static_cast<std::size_t>(n), 'a');
            for (Pos k = 0; k < n; ++k) {
                if (bits >> k & 1u) text[k] = 'b';
            }
            checked += check_instance(text, all_distinct_substrings(text), mismatches, first);
            ++texts;
        }
    }
    std::string detail = "texts=" + std::to_string(texts) + " checked=" + std::to_string(checked) +
                         " mismatches=" + std::to_string(mismatches);
    if (!first.empty()) detail += " first: " + first;
    return {mismatches == 0 && texts == 2046, detail};
}

Outcome randomized_corpus() {
    std::mt19937_64 rng(2024);
    const int alphabets[] = {2, 3, 26};
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t collapsed = 0;
    std::string first;
    for (int k = 0; k < 200; ++k) {
        RandomInstanceOptions options;
        options.n = std::uniform_int_distribution<Pos>(1, 64)(rng);
        options.alphabet = alphabets[k % 3];
        options.fragments = std::uniform_int_distribution<std::size_t>(0, 40)(rng);
        options.max_fragment_length = std::uniform_int_distribution<Pos>(1, options.n)(rng);
        options.duplicate_rate = 0.3;
        DictionaryInput in = random_instance(rng, options);
        std::set<std::string> distinct;
        for (Span s : in.fragments) distinct.insert(in.text.substr(s.l - 1, s.length()));
        collapsed += in.fragments.size() - distinct.size();
        checked += check_instance(in.text, in.fragments, mismatches, first);
    }
    std::string detail = "instances=200 checked=" + std::to_string(checked) + " duplicate_fragments=" +
                         std::to_string(collapsed) + " mismatches=" + std::to_string(mismatches);
    if (!first.empty()) detail += " first: " + first;
    return {mismatches == 0 && collapsed > 0, detail};
}

Outcome structure_oracle() {
    std::mt19937_64 rng(77);
    const int alphabets[] = {2, 3, 4, 26};
    std::uint64_t classes = 0;
    std::uint64_t disagreements = 0;
    std::uint64_t violations = 0;
    for (int k = 0; k < 50; ++k) {
        Pos n = std::uniform_int_distribution<Pos>(1, 64)(rng);
        std::string text = random_text(rng, n, alphabets[k % 4]);
        auto index = std::make_shared<const TextIndex>(text);
        SubstringStructure st(index);
        std::vector<OracleClass> expected = classify_substrings(text);
        classes += expected.size();
        if (st.class_count() != expected.size()) {
            ++disagreements;
            continue;
        }
        std::int64_t covered = 0;
        std::vector<std::int64_t> points(st.class_count(), 0);
        for (Pos l = 1; l <= n; ++l) {
            for (Pos r = l; r <= n; ++r) ++points[st.class_of(l, r).cls];
        }
        for (const EquivClass& c : st.classes()) {
            const OracleClass& e = expected[c.id];
            auto a = st.staircase(c.id);
            std::vector<Pos> staircase(a.begin(), a.end());
            if (c.rep != e.rep || c.occ != e.occ || c.col_lo != e.col_lo || c.col_hi != e.col_hi || c.top != e.top ||
                staircase != e.staircase || st.anchors(c.id) != e.anchors) {
                ++disagreements;
            }
            for (std::size_t x = 1; x < a.size(); ++x) violations += a[x - 1] > a[x];
            violations += a.back() > c.top;
            std::int64_t block = 0;
            for (Pos y : a) block += c.top - y + 1;
            covered += block * c.occ;
            violations += points[c.id] != block * c.occ;
            violations += e.members != block * c.occ;
        }
        violations += covered != static_cast<std::int64_t>(n) * (n + 1) / 2;
    }
    return {disagreements == 0 && violations == 0,
            "texts=50 classes=" + std::to_string(classes) + " disagreements=" + std::to_string(disagreements) +
                " violations=" + std::to_string(violations)};
}

Outcome find_x_oracle() {
    std::mt19937_64 rng(32);
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    for (int k = 0; k < 100; ++k) {
        // lengths cycle so every n in [1, 32] is sampled about three times
        Pos n = k % 32 + 1;
        std::string text = random_text(rng, n, 2);
        DictionaryIndex index(text, {});
        Oracle oracle(text, {});
        for (Pos l = 1; l <= n; ++l) {
            for (Pos r = l; r <= n; ++r) {
                mismatches += index.distinct().find_x(l, r) != oracle.find_x(l, r);
                ++checked;
            }
        }
    }
    return {mismatches == 0,
            "texts=100 spans=" + std::to_string(checked) + " mismatches=" + std::to_string(mismatches)};
}

Outcome abbab_class_picture() {
    DictionaryIndex index("abbab", {});
    const SubstringStructure& st = index.structure();
    std::ostringstream dump;
    st.dump(dump);
    bool ok = st.class_count() == 3;
    std::vector<std::string> reps;
    std::vector<Pos> occ;
    for (const EquivClass& c : st.classes()) {
        reps.emplace_back(index.text_index().substr(c.rep.l, c.rep.r));
        occ.push_back(c.occ);
    }
    // ids follow first occurrence: ab (1,2), abbab (1,5), b (2,2)
    ok = ok && reps == std::vector<std::string>{"ab", "abbab", "b"} && occ == std::vector<Pos>{2, 1, 3};
    if (ok) {
        const EquivClass& whole = st.equiv_class(1);
        auto a = st.staircase(1);
        ok = whole.col_lo == 1 && whole.col_hi == 3 && whole.top == 5 &&
             std::vector<Pos>(a.begin(), a.end()) == std::vector<Pos>{3, 3, 4};
    }
    std::string flat = dump.str();
    std::replace(flat.begin(), flat.end(), '\n', ';');
    return {ok, flat};
}

struct ScalingRun {
    std::vector<BenchResult> results;
};

const ScalingRun& scaling_run() {
    static ScalingRun run = [] {
        ScalingRun r;
        BenchOptions options;
        options.seed = 7;
        options.d_ratio = 1.0;
        options.build_repeats = 11;
        options.query_rounds = 5;
        // warm the allocator and caches once
        run_bench(1 << 10, options);
        const std::vector<Pos> sizes{1 << 12, 1 << 14, 1 << 16};
        r.results = run_bench(sizes, options);
        return r;
    }();
    return run;
}

const KindTiming& timing(const BenchResult& r, QueryKind kind) {
    return *std::find_if(r.kinds.begin(), r.kinds.end(), [&](const KindTiming& k) { return k.kind == kind; });
}

Outcome scaling_smoke() {
    const auto& results = scaling_run().results;
    bool ok = true;
    std::ostringstream d;
    for (const BenchResult& r : results) {
        d << "[n=" << r.n << " build_ms=" << format(r.build_ms) << " runs=";
        for (std::size_t k = 0; k < r.build_runs_ms.size(); ++k) d << (k ? "," : "") << format(r.build_runs_ms[k]);
        for (const KindTiming& k : r.kinds) {
            d << ' ' << kind_name(k.kind) << "_ns=" << format(k.median_ns, 0);
            if (k.kind == QueryKind::kReport || k.kind == QueryKind::kReportDistinct) {
                d << ' ' << kind_name(k.kind) << "_ns_per_item=" << format(k.median_ns_per_item, 1) << ' '
                  << kind_name(k.kind) << "_mean_output=" << format(k.mean_output, 1);
            }
        }
        d << "] ";
    }
    for (std::size_t k = 1; k < results.size(); ++k) {
        double ratio = results[k].build_ms / results[k - 1].build_ms;
        bool fine = ratio <= 5.4;
        ok = ok && fine;
        d << "build_ratio_" << results[k - 1].n << "_" << results[k].n << "=" << format(ratio) << (fine ? "" : "(>5.4)")
          << ' ';
    }
    for (QueryKind kind : {QueryKind::kCount, QueryKind::kCountDistinct}) {
        double ratio = timing(results.back(), kind).median_ns / timing(results.front(), kind).median_ns;
        bool fine = ratio <= 3.0;
        ok = ok && fine;
        d << kind_name(kind) << "_latency_ratio=" << format(ratio) << (fine ? "" : "(>3)") << ' ';
    }
    for (QueryKind kind : {QueryKind::kReport, QueryKind::kReportDistinct}) {
        double lo = 1e300, hi = 0;
        for (const BenchResult& r : results) {
            lo = std::min(lo, timing(r, kind).median_ns_per_item);
            hi = std::max(hi, timing(r, kind).median_ns_per_item);
        }
        bool fine = hi <= 2.0 * lo;
        ok = ok && fine;
        d << kind_name(kind) << "_c_spread=" << format(hi / lo) << (fine ? "" : "(>2)") << ' ';
    }
    std::string detail = d.str();
    detail.pop_back();
    return {ok, detail};
}

Outcome space_smoke() {
    const BenchResult& r = scaling_run().results.back();
    const double n = r.n;
    const double lg = std::log2(n);
    const double node_bound = 40 * n * lg * lg;
    const double segment_bound = 4 * n * lg;
    const auto segments = static_cast<double>(r.stats.next_segments + r.stats.end_segments);
    const auto nodes = static_cast<double>(r.stats.versioned_nodes);
    bool ok = nodes <= node_bound && segments <= segment_bound;
    return {ok, "n=" + std::to_string(r.n) + " versioned_nodes=" + std::to_string(r.stats.versioned_nodes) +
                    " bound=" + format(node_bound, 0) + " segments=" + format(segments, 0) + " (next=" +
                    std::to_string(r.stats.next_segments) + " end=" + std::to_string(r.stats.end_segments) +
                    ") bound=" + format(segment_bound, 0)};
}

struct Command {
    int status;
    std::string out;
};

Command run_cli(const std::string& args) {
    std::string command = std::string(IDQ_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) return {-1, ""};
    std::string out;
    std::array<char, 4096> buffer{};
    while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe)) out.append(buffer.data(), got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome negative_control() {
    namespace fs = std::filesystem;
    fs::path file = fs::temp_directory_path() / ("idq_acceptance_" + std::to_string(::getpid()) + ".txt");
    std::string text = "abbabbabab";
    {
        std::ofstream out(file);
        write_dictionary(out, DictionaryInput{text, all_distinct_substrings(text)});
    }
    Command clean = run_cli("verify " + file.string() + " --spans all");
    Command faulty = run_cli("verify " + file.string() + " --spans all --inject-fault");
    fs::remove(file);
    std::size_t lines = 0;
    for (std::size_t p = faulty.out.find("MISMATCH "); p != std::string::npos; p = faulty.out.find("MISMATCH ", p + 1)) {
        ++lines;
    }
    bool ok = clean.status == 0 && faulty.status != 0 && lines > 0;
    return {ok, "clean_exit=" + std::to_string(clean.status) + " fault_exit=" + std::to_string(faulty.status) +
                    " mismatch_lines=" + std::to_string(lines)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"exhaustive binary corpus n<=10", exhaustive_micro_corpus},
        {"randomized corpus", randomized_corpus},
        {"structure vs brute-force classifier", structure_oracle},
        {"find_x vs brute force", find_x_oracle},
        {"abbab class picture", abbab_class_picture},
        {"scaling smoke", scaling_smoke},
        {"space smoke", space_smoke},
        {"fault injection is caught", negative_control},
    };
    std::set<int> only;
    for (int k = 1; k < argc; ++k) only.insert(std::atoi(argv[k]));

    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        int number = static_cast<int>(k) + 1;
        if (!only.empty() && only.count(number) == 0) continue;
        auto start = std::chrono::steady_clock::now();
        Outcome o = criteria[k].second();
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << number << " (" << criteria[k].first << ") "
                  << o.detail << " time_s=" << format(seconds, 1) << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
