#ifndef IDQ_QUERY_ENGINE_HPP_
#define IDQ_QUERY_ENGINE_HPP_

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "idq/common.hpp"
#include "idq/dominance_index.hpp"
#include "idq/substring_structure.hpp"

namespace idq {

struct Occurrence {
    PatternId pattern;
    Pos l;
    Pos r;

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
    friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

// A distinct dictionary string.
struct Pattern {
    Span first;  // first occurrence in T, also its point in the class's first block
    NodeId row_node;
    NodeId column_node;
    ClassId cls;
};

struct EngineOptions {
    // Test-only fault: leaves out the in-class dominance term of Count, so the
    // oracle comparison has something to catch.
    bool drop_dominance_term = false;
};

/*
 * A dictionary of fragments of T attached to the substring structure.
 *
 * Fragments spelling the same string collapse into one pattern; ids follow
 * the pattern's first occurrence (by start, then end). With sgn marking the
 * patterns, pre_t summing sgn over prefixes of t and suf_t summing pre over
 * suffixes of t, Count(i, j) = suf_{T[i,j]}. The engine stores pre for the
 * full column string of every column node and suf for the full row string of
 * every row node; a query reduces to one stored suf, a partial sum over
 * columns of its class and a dominance count over the class's patterns.
 */
class QueryEngine {
public:
    QueryEngine(std::shared_ptr<const SubstringStructure> structure, std::span<const Span> fragments,
                EngineOptions options = {});

    const SubstringStructure& structure() const { return *structure_; }
    const std::shared_ptr<const SubstringStructure>& shared_structure() const { return structure_; }
    const TextIndex& index() const { return structure_->index(); }

    std::size_t pattern_count() const { return patterns_.size(); }
    std::size_t fragment_count() const { return fragment_pattern_.size(); }
    // fragments that duplicated an earlier string
    std::size_t collapsed() const { return fragment_pattern_.size() - patterns_.size(); }
    const Pattern& pattern(PatternId id) const { return patterns_[id]; }
    PatternId pattern_of_fragment(std::size_t k) const { return fragment_pattern_[k]; }
    std::span<const Span> fragments() const { return fragments_; }

    // patterns whose strings lie on a node, by ascending length
    std::span<const PatternId> patterns_on_row_node(NodeId u) const;
    std::span<const PatternId> patterns_on_column_node(NodeId v) const;

    std::int64_t count(Pos i, Pos j) const;
    bool exists(Pos i, Pos j) const;
    // starts loading what count(., j) reads first
    void prefetch(Pos j) const { __builtin_prefetch(&position_entries_[static_cast<std::size_t>(j)]); }
    // every occurrence inside T[i, j]; the order is deterministic
    std::vector<Occurrence> report(Pos i, Pos j) const;

    std::size_t memory_bytes() const;

private:
    // What Count needs about a row node, in one cache line.
    struct alignas(32) RowEntry {
        NodeId parent;
        Pos parent_len;
        Pos y;        // row in the first block
        Pos row_end;  // last column of that row
        std::int32_t column_base;  // column slot of x is column_base + x
        std::int32_t dominance;    // into class_dominance_, or -1
        // suf of the parent's longest string plus the column prefix sums through row_end
        std::int64_t suf_through_end;
    };

    void attach(std::span<const Span> fragments);
    void accumulate();
    void build_dominance();
    void build_row_entries();

    // the entry of the row node holding T[i, j], and its column x
    std::pair<const RowEntry*, Pos> find_row(Pos i, Pos j) const;
    // suf of the parent plus the column sum over [x, row_end]
    std::int64_t outside_block(const RowEntry& e, Pos x) const;

    std::int64_t column_sum(ClassId c, Pos from, Pos to) const;
    void report_columns(ClassId c, Pos from, Pos to, Pos shift, std::vector<Occurrence>& out) const;
    void report_prefixes(NodeId column_node, Pos start, std::vector<Occurrence>& out) const;

    std::shared_ptr<const SubstringStructure> structure_;
    EngineOptions options_;

    std::vector<Span> fragments_;
    std::vector<PatternId> fragment_pattern_;
    std::vector<Pattern> patterns_;

    std::vector<std::uint32_t> row_pattern_begin_;  // CSR over row nodes
    std::vector<PatternId> row_patterns_;
    std::vector<std::uint32_t> column_pattern_begin_;  // CSR over column nodes
    std::vector<PatternId> column_patterns_;
    std::vector<std::uint32_t> class_pattern_begin_;  // CSR over classes, by row
    std::vector<PatternId> class_patterns_;

    std::vector<std::int64_t> pre_full_;         // per column node
    std::vector<std::int64_t> suf_full_;         // per row node
    std::vector<std::int64_t> column_prefix_;    // prefix sums of pre at the parent of each column slot
    std::vector<std::uint32_t> next_column_;     // next column slot whose parent pre is nonzero
    std::vector<NodeId> nonzero_row_;            // lowest ancestor-or-self adding to suf
    std::vector<NodeId> nonzero_column_;         // lowest ancestor-or-self holding a pattern

    std::vector<std::int32_t> class_dominance_slot_;
    std::vector<DominanceIndex> class_dominance_;
    std::vector<RowEntry> row_entries_;
    std::vector<RowEntry> position_entries_;  // entry of rows.position_node(j), by j
};

QueryEngine attach_dictionary(std::shared_ptr<const SubstringStructure> structure, std::span<const Span> fragments,
                              EngineOptions options = {});

}  // namespace idq

#endif  // IDQ_QUERY_ENGINE_HPP_
