#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "idq/bench.hpp"
#include "idq/dictionary_index.hpp"
#include "idq/io.hpp"
#include "idq/oracle.hpp"
#include "idq/verify.hpp"

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
    std::ifstream in(path, mode);
    if (!in) throw UsageError("cannot open " + path);
    return in;
}

idq::DictionaryInput read_dictionary_file(const std::string& path) {
    auto in = open_in(path);
    return idq::read_dictionary(in);
}

idq::DictionaryInput read_index_file(const std::string& path) {
    auto in = open_in(path, std::ios::binary);
    return idq::load_index(in);
}

void print_stats(const idq::BuildStats& s) {
    std::cout << "n=" << s.n << '\n'
              << "classes=" << s.classes << '\n'
              << "blocks=" << s.blocks << '\n'
              << "fragments=" << s.fragments << '\n'
              << "patterns_distinct=" << s.patterns_distinct << '\n'
              << "collapsed=" << s.collapsed << '\n'
              << "next_segments=" << s.next_segments << '\n'
              << "end_segments=" << s.end_segments << '\n'
              << "range_adds=" << s.range_adds << '\n'
              << "versioned_nodes=" << s.versioned_nodes << '\n'
              << "index_bytes=" << s.index_bytes << '\n';
}

int cmd_build(const std::string& input, const std::string& output) {
    auto dict = read_dictionary_file(input);
    idq::DictionaryIndex index(std::move(dict.text), dict.fragments);
    std::ofstream out(output, std::ios::binary);
    if (!out) throw UsageError("cannot write " + output);
    idq::save_index(out, index);
    out.close();
    if (!out) throw UsageError("failed writing " + output);
    print_stats(index.stats());
    return 0;
}

int cmd_query(const std::string& index_path, const std::string& query_path) {
    auto dict = read_index_file(index_path);
    auto in = open_in(query_path);
    auto queries = idq::read_queries(in);
    idq::DictionaryIndex index(std::move(dict.text), dict.fragments);
    for (const idq::Query& q : queries) {
        try {
            std::cout << idq::answer_line(index, q.kind, q.i, q.j) << '\n';
        } catch (const idq::RangeError& e) {
            throw idq::ParseError(q.line, e.what());
        }
    }
    return 0;
}

int cmd_dump(const std::string& index_path) {
    auto dict = read_index_file(index_path);
    idq::DictionaryIndex index(std::move(dict.text), dict.fragments);
    index.structure().dump(std::cout);
    return 0;
}

int cmd_verify(const std::string& input, const std::string& spans_arg, std::uint64_t seed, bool inject_fault) {
    auto dict = read_dictionary_file(input);
    idq::EngineOptions options;
    options.drop_dominance_term = inject_fault;
    idq::DictionaryIndex index(dict.text, dict.fragments, options);
    idq::Oracle oracle(dict.text, dict.fragments);

    std::vector<idq::Span> spans;
    if (spans_arg == "all") {
        spans = idq::all_spans(index.n());
    } else if (spans_arg.rfind("random:", 0) == 0) {
        std::size_t k = 0;
        try {
            k = std::stoull(spans_arg.substr(7));
        } catch (const std::exception&) {
            throw UsageError("bad --spans value " + spans_arg);
        }
        spans = idq::random_spans(seed, index.n(), k);
    } else {
        throw UsageError("bad --spans value " + spans_arg);
    }

    std::uint64_t mismatches = 0;
    std::uint64_t checked = idq::verify_spans(index, oracle, spans, [&](const idq::Mismatch& m) {
        ++mismatches;
        std::cout << "MISMATCH " << idq::kind_name(m.kind) << ' ' << m.i << ' ' << m.j << " engine=" << m.engine
                  << " oracle=" << m.oracle << '\n';
    });
    std::cout << "checked=" << checked << '\n' << "mismatches=" << mismatches << '\n';
    return mismatches == 0 ? 0 : kExitMismatch;
}

int cmd_bench(const std::vector<idq::Pos>& sizes, std::uint64_t seed, double d_ratio, std::size_t queries) {
    idq::BenchOptions options;
    options.seed = seed;
    options.d_ratio = d_ratio;
    options.queries = queries;
    for (idq::Pos n : sizes) {
        if (n < 1) throw UsageError("sizes must be positive");
    }
    for (const idq::BenchResult& r : idq::run_bench(sizes, options)) {
        const idq::Pos n = r.n;
        std::cout << "n=" << n << " kind=build ms=" << r.build_ms << " index_bytes=" << r.stats.index_bytes
                  << " patterns_distinct=" << r.stats.patterns_distinct << '\n';
        for (const idq::KindTiming& k : r.kinds) {
            std::cout << "n=" << n << " kind=" << idq::kind_name(k.kind) << " median_ns=" << k.median_ns;
            if (k.kind == idq::QueryKind::kReport || k.kind == idq::QueryKind::kReportDistinct) {
                std::cout << " mean_output=" << k.mean_output;
            }
            std::cout << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Internal dictionary queries over fragments of a text"};
    app.require_subcommand(1);

    std::string input;
    std::string output;
    auto* build = app.add_subcommand("build", "Build an index from a dictionary file");
    build->add_option("input", input, "Dictionary file")->required();
    build->add_option("output", output, "Index file to write")->required();

    std::string index_path;
    std::string query_path;
    auto* query = app.add_subcommand("query", "Answer a file of queries");
    query->add_option("index", index_path, "Index file")->required();
    query->add_option("queries", query_path, "Query file")->required();

    auto* dump = app.add_subcommand("dump", "Print the equivalence classes of an index");
    dump->add_option("index", index_path, "Index file")->required();

    std::string spans = "all";
    std::uint64_t seed = 1;
    bool inject_fault = false;
    auto* verify = app.add_subcommand("verify", "Compare all query kinds against brute force");
    verify->add_option("input", input, "Dictionary file")->required();
    verify->add_option("--spans", spans, "all | random:<k>")->capture_default_str();
    verify->add_option("--seed", seed, "Seed for random spans")->capture_default_str();
    verify->add_flag("--inject-fault", inject_fault)->group("");

    std::vector<idq::Pos> sizes{4096, 65536};
    double d_ratio = 1.0;
    std::size_t queries = 2000;
    auto* bench = app.add_subcommand("bench", "Time construction and queries on random instances");
    bench->add_option("--sizes", sizes, "Text lengths")->delimiter(',')->capture_default_str();
    bench->add_option("--seed", seed, "Seed")->capture_default_str();
    bench->add_option("--d-ratio", d_ratio, "Fragments per text position")->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    bench->add_option("--queries", queries, "Queries per kind")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*build) return cmd_build(input, output);
        if (*query) return cmd_query(index_path, query_path);
        if (*dump) return cmd_dump(index_path);
        if (*verify) return cmd_verify(input, spans, seed, inject_fault);
        if (*bench) return cmd_bench(sizes, seed, d_ratio, queries);
    } catch (const std::exception& e) {
        // parse, range and file errors alike
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
