#ifndef IDQ_DISTINCT_ENGINE_HPP_
#define IDQ_DISTINCT_ENGINE_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "idq/common.hpp"
#include "idq/query_engine.hpp"
#include "idq/range_extremum.hpp"
#include "idq/versioned_add_array.hpp"

namespace idq {

// Prefixes T[l, i] with i in [i_lo, i_hi] next occur starting at nxt
// (kInfinitePos when they never occur again).
struct NextOccurrence {
    Pos i_lo;
    Pos i_hi;
    Pos nxt;

    friend bool operator==(const NextOccurrence&, const NextOccurrence&) = default;
};

struct DistinctStats {
    std::uint64_t next_segments = 0;  // runs reported by the start-position sweep
    std::uint64_t end_segments = 0;   // runs reported by the end-position sweep
    std::uint64_t range_adds = 0;
    std::size_t versioned_nodes = 0;
};

/*
 * CountDistinct and ReportDistinct on top of a QueryEngine.
 *
 * For a window T[l, r] let x be the smallest i such that no prefix T[l, t]
 * with t >= i occurs again inside the window. The distinct count is
 * Count(l, r) - Count(l, x - 1) minus a correction read from a persistent
 * array (version r, position l) filled by a sweep over end positions.
 *
 * Reporting seeds a set containing every pattern that is not a suffix of
 * another occurring pattern, then closes it under "longest proper suffix that
 * is a pattern".
 */
class DistinctEngine {
public:
    explicit DistinctEngine(std::shared_ptr<const QueryEngine> engine);

    const QueryEngine& engine() const { return *engine_; }

    // segments of [l, n] in ascending order of i
    std::vector<NextOccurrence> next_occurrences(Pos l) const;
    Pos find_x(Pos l, Pos r) const;

    std::int64_t leaf_term(Pos l, Pos r) const;
    std::int64_t branch_term(Pos l, Pos r) const;

    std::int64_t count_distinct(Pos i, Pos j) const;
    // ascending pattern ids
    std::vector<PatternId> report_distinct(Pos i, Pos j) const;

    // longest pattern that is a proper suffix of the given one, or kNoPattern
    PatternId suffix_pattern(PatternId p) const { return suffix_pattern_[p]; }

    const DistinctStats& stats() const { return stats_; }
    const VersionedAddArray& branch_versions() const { return versions_; }
    std::size_t memory_bytes() const;

private:
    void sweep_starts();
    void sweep_ends();
    void build_seed_tables();

    template <typename Emit>
    void seed_column(ClassId c, Pos x, Pos row_hi, Emit&& emit) const;

    std::shared_ptr<const QueryEngine> engine_;

    // next occurrences, flattened by start position
    std::vector<std::uint32_t> next_begin_;
    struct NextRun {
        Pos hi;
        Pos nxt;
    };
    std::vector<NextRun> next_runs_;

    VersionedAddArray versions_;

    std::vector<PatternId> suffix_pattern_;
    std::vector<PatternId> ancestor_pattern_;  // per row node, longest pattern on a proper ancestor
    std::vector<Pos> use_from_;                // per row node, smallest useful column
    RangeExtremum<Pos, std::greater<Pos>> shortest_column_;  // per row slot
    RangeExtremum<Pos> useful_column_;                       // per row slot
    std::vector<NodeId> seeding_column_;  // lowest ancestor-or-self column node with seeds

    DistinctStats stats_;
};

}  // namespace idq

#endif  // IDQ_DISTINCT_ENGINE_HPP_
