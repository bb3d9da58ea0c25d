#include <doctest.h>

#include <memory>

#include "helpers.hpp"
#include "idq/distinct_engine.hpp"
#include "idq/oracle.hpp"

using namespace idq;

namespace {

DistinctEngine distinct_of(const std::string& text, const std::vector<Span>& fragments) {
    auto st = std::make_shared<const SubstringStructure>(std::make_shared<const TextIndex>(text));
    return DistinctEngine(std::make_shared<const QueryEngine>(st, fragments));
}

}  // namespace

TEST_CASE("next occurrences of prefixes") {
    DistinctEngine abbab = distinct_of("abbab", {});
    CHECK(abbab.next_occurrences(1) ==
          std::vector<NextOccurrence>{{1, 2, 4}, {3, 5, kInfinitePos}});
    CHECK(abbab.next_occurrences(5) == std::vector<NextOccurrence>{{5, 5, kInfinitePos}});
    DistinctEngine aaaa = distinct_of("aaaa", {});
    CHECK(aaaa.next_occurrences(1) == std::vector<NextOccurrence>{{1, 3, 2}, {4, 4, kInfinitePos}});
}

TEST_CASE("next occurrences agree with a scan") {
    for (const std::string& text : testing::random_texts(31, 40, 40, 2)) {
        DistinctEngine d = distinct_of(text, {});
        Oracle oracle(text, {});
        const Pos n = static_cast<Pos>(text.size());
        for (Pos l = 1; l <= n; ++l) {
            Pos expect_lo = l;
            for (const NextOccurrence& seg : d.next_occurrences(l)) {
                CHECK(seg.i_lo == expect_lo);
                CHECK(seg.i_lo <= seg.i_hi);
                for (Pos i = seg.i_lo; i <= seg.i_hi; ++i) CHECK(oracle.next_start(l, i) == seg.nxt);
                expect_lo = seg.i_hi + 1;
            }
            CHECK(expect_lo == n + 1);
        }
    }
}

TEST_CASE("find_x examples") {
    DistinctEngine d = distinct_of("abbab", {});
    CHECK(d.find_x(1, 5) == 3);
    CHECK(d.find_x(1, 4) == 2);
    for (Pos l = 1; l <= 5; ++l) CHECK(d.find_x(l, l) == l);
    CHECK_THROWS_AS(d.find_x(2, 1), RangeError);
}

TEST_CASE("count_distinct and report_distinct on abbab") {
    DistinctEngine d = distinct_of("abbab", {{1, 2}, {2, 2}});
    CHECK(d.count_distinct(1, 2) == 2);
    CHECK(d.count_distinct(2, 4) == 1);
    CHECK(d.count_distinct(1, 5) == 2);
    CHECK(d.report_distinct(1, 5) == std::vector<PatternId>{0, 1});
    CHECK(d.report_distinct(4, 4).empty());
    CHECK(d.report_distinct(2, 3) == std::vector<PatternId>{1});
    // x = 3 for the whole text, so the leaf term is count(1,5) - count(1,2)
    CHECK(d.leaf_term(1, 5) == 3);
    CHECK(d.branch_term(1, 5) == 1);
    CHECK(d.suffix_pattern(0) == 1);
    CHECK(d.suffix_pattern(1) == kNoPattern);
}

TEST_CASE("an empty dictionary has nothing distinct") {
    DistinctEngine d = distinct_of("abbab", {});
    for (Pos i = 1; i <= 5; ++i) {
        for (Pos j = i; j <= 5; ++j) {
            CHECK(d.count_distinct(i, j) == 0);
            CHECK(d.report_distinct(i, j).empty());
        }
    }
    const VersionedAddArray& v = d.branch_versions();
    for (std::size_t r = 0; r < v.versions(); ++r)
        for (Pos l = 1; l <= 5; ++l) CHECK(v.point_query(r, l) == 0);
}

TEST_CASE("the correction term equals leaf term minus the distinct count") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 80; ++trial) {
        RandomInstanceOptions options;
        options.n = std::uniform_int_distribution<Pos>(1, 36)(rng);
        options.alphabet = trial % 2 == 0 ? 2 : 3;
        options.fragments = std::uniform_int_distribution<std::size_t>(0, 30)(rng);
        options.max_fragment_length = 6;
        options.duplicate_rate = 0.25;
        DictionaryInput in = random_instance(rng, options);
        CAPTURE(in.text);
        DistinctEngine d = distinct_of(in.text, in.fragments);
        Oracle oracle(in.text, in.fragments);
        for (PatternId p = 0; p < static_cast<PatternId>(oracle.pattern_count()); ++p) {
            // longest proper suffix that is a pattern
            const std::string& s = oracle.pattern(p);
            PatternId want = kNoPattern;
            std::size_t best = 0;
            for (PatternId q = 0; q < static_cast<PatternId>(oracle.pattern_count()); ++q) {
                const std::string& t = oracle.pattern(q);
                if (t.size() < s.size() && t.size() > best && s.compare(s.size() - t.size(), t.size(), t) == 0) {
                    want = q;
                    best = t.size();
                }
            }
            CHECK(d.suffix_pattern(p) == want);
        }
        for (Pos i = 1; i <= options.n; ++i) {
            for (Pos j = i; j <= options.n; ++j) {
                CHECK(d.find_x(i, j) == oracle.find_x(i, j));
                CHECK(d.branch_term(i, j) == d.leaf_term(i, j) - oracle.count_distinct(i, j));
                CHECK(d.count_distinct(i, j) == oracle.count_distinct(i, j));
                CHECK(d.report_distinct(i, j) == oracle.report_distinct(i, j));
            }
        }
    }
}
