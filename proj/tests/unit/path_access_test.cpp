#include <doctest.h>

#include <random>
#include <vector>

#include "idq/path_access.hpp"

using namespace idq;

namespace {

// checks one access result against naive labels, then relabels naively
void check_access(PathAccess& paths, const std::vector<NodeId>& parent, std::vector<Pos>& labels, NodeId v,
                  Pos label) {
    std::vector<PathSegment> segments;
    paths.access(v, label, segments);
    REQUIRE_FALSE(segments.empty());
    NodeId expect = v;
    for (const PathSegment& s : segments) {
        REQUIRE(s.deepest == expect);
        for (NodeId w = s.deepest;; w = parent[w]) {
            CHECK(labels[w] == s.label);
            if (w == s.top) {
                expect = parent[w];
                break;
            }
            REQUIRE(parent[w] != kNoNode);
        }
    }
    CHECK(expect == kNoNode);
    for (NodeId w = v; w != kNoNode; w = parent[w]) labels[w] = label;
}

}  // namespace

TEST_CASE("fresh structure reports one run with the initial label") {
    std::vector<NodeId> parent{kNoNode, 0, 1, 1, 3};
    PathAccess paths(parent, 7);
    std::vector<PathSegment> segments;
    paths.access(4, 1, segments);
    REQUIRE(segments.size() == 1);
    CHECK(segments[0].deepest == 4);
    CHECK(segments[0].top == 0);
    CHECK(segments[0].label == 7);
}

TEST_CASE("repeating an access reports the previous label") {
    std::vector<NodeId> parent{kNoNode, 0, 1, 1, 3};
    PathAccess paths(parent, 0);
    std::vector<PathSegment> segments;
    paths.access(4, 1, segments);
    paths.access(4, 2, segments);
    REQUIRE(segments.size() == 1);
    CHECK(segments[0].label == 1);
    CHECK_THROWS_AS(paths.access(9, 1, segments), LookupError);
}

TEST_CASE("matches naive relabelling on random trees") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        auto size = std::uniform_int_distribution<NodeId>(1, 60)(rng);
        std::vector<NodeId> parent(size, kNoNode);
        for (NodeId v = 1; v < size; ++v) parent[v] = std::uniform_int_distribution<NodeId>(0, v - 1)(rng);
        std::vector<Pos> labels(size, -1);
        PathAccess paths(parent, -1);
        for (Pos step = 0; step < 200; ++step) {
            NodeId v = std::uniform_int_distribution<NodeId>(0, size - 1)(rng);
            check_access(paths, parent, labels, v, step);
        }
    }
}

TEST_CASE("run totals stay near n log n on a path") {
    const NodeId n = 1 << 12;
    std::vector<NodeId> parent(n);
    parent[0] = kNoNode;
    for (NodeId v = 1; v < n; ++v) parent[v] = v - 1;
    PathAccess paths(parent, 0);
    std::vector<PathSegment> segments;
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<NodeId> pick(0, n - 1);
    for (Pos step = 1; step <= n; ++step) paths.access(pick(rng), step, segments);
    // every access reports at least one run
    CHECK(paths.total_segments() >= static_cast<std::uint64_t>(n));
    CHECK(paths.total_segments() <= static_cast<std::uint64_t>(4 * n * 12));
}
