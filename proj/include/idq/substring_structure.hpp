#ifndef IDQ_SUBSTRING_STRUCTURE_HPP_
#define IDQ_SUBSTRING_STRUCTURE_HPP_

#include <memory>
#include <ostream>
#include <span>
#include <vector>

#include "idq/common.hpp"
#include "idq/dominance_index.hpp"
#include "idq/text_index.hpp"

namespace idq {

/*
 * One equivalence class of substrings: all substrings whose maximal
 * occurrence-preserving extension is the same string rep.
 *
 * Placing every substring T[l, r] at the grid point (l, r), each occurrence of
 * the class is a staircase block. The first block (the first occurrence of
 * every member) spans columns [col_lo, col_hi] with col_lo = rep.l, and
 * column x covers rows [A_x, top] with top = rep.r and A non-decreasing.
 * The other occ - 1 blocks are translates of the first.
 */
struct EquivClass {
    ClassId id;
    Span rep;  // first occurrence of the representative
    Pos occ;
    Pos col_lo;
    Pos col_hi;
    Pos row_lo;  // A_{col_lo}
    Pos top;
    std::uint32_t column_offset;  // into the per-column tables
    std::uint32_t row_offset;     // into the per-row tables
};

// T[l, r] expressed in the first block of its class.
struct Placement {
    NodeId row_node;
    ClassId cls;
    Pos x;      // column in the first block
    Pos y;      // row in the first block
    Pos shift;  // r - y, the translation to the block holding (l, r)
};

// The block holding a grid point and the point's offsets from the block's
// left column and bottom row.
struct BlockCoord {
    ClassId cls;
    Pos block;  // 1-based, blocks ordered by ascending start position
    Pos col_offset;
    Pos row_offset;
};

class SubstringStructure {
public:
    explicit SubstringStructure(std::shared_ptr<const TextIndex> index);

    const TextIndex& index() const { return *index_; }
    const std::shared_ptr<const TextIndex>& shared_index() const { return index_; }

    std::size_t class_count() const { return classes_.size(); }
    const EquivClass& equiv_class(ClassId c) const { return classes_[c]; }
    std::span<const EquivClass> classes() const { return classes_; }

    // A_x for x in [col_lo, col_hi]
    std::span<const Pos> staircase(ClassId c) const;
    NodeId column_node(ClassId c, Pos x) const { return column_nodes_[classes_[c].column_offset + (x - classes_[c].col_lo)]; }
    NodeId row_node(ClassId c, Pos y) const { return row_nodes_[classes_[c].row_offset + (y - classes_[c].row_lo)]; }
    // global slot of a column/row, for tables laid out like the staircases
    std::uint32_t column_slot(ClassId c, Pos x) const { return classes_[c].column_offset + static_cast<std::uint32_t>(x - classes_[c].col_lo); }
    std::uint32_t row_slot(ClassId c, Pos y) const { return classes_[c].row_offset + static_cast<std::uint32_t>(y - classes_[c].row_lo); }
    std::size_t column_slots() const { return column_nodes_.size(); }
    std::size_t row_slots() const { return row_nodes_.size(); }

    ClassId class_of_node(Tree which, NodeId v) const {
        return which == Tree::kRow ? row_class_[v] : column_class_[v];
    }
    // first-block column of a column-tree node / row of a row-tree node
    Pos column_of(NodeId column_node) const { return index_->column_tree().sample(column_node).l; }
    Pos row_of(NodeId row_node) const { return index_->row_tree().sample(row_node).r; }
    // last column of a row-tree node's row in the first block
    Pos row_end(NodeId row_node) const;

    Placement place(Pos l, Pos r) const;
    Span ext(Pos l, Pos r) const;
    BlockCoord class_of(Pos l, Pos r) const;
    Pos occ_count(Pos l, Pos r) const;
    // start positions of the blocks of a class, ascending
    std::vector<Pos> anchors(ClassId c) const;

    // one line per class:
    // class <id> rep=<l>,<r> occ=<k> cols=<l>..<r> top=<b> A=<a_l,...,a_r>
    void dump(std::ostream& out) const;

    std::size_t memory_bytes() const;

private:
    void build_classes();
    void build_block_ranks();

    std::shared_ptr<const TextIndex> index_;
    std::vector<EquivClass> classes_;
    std::vector<ClassId> row_class_;
    std::vector<ClassId> column_class_;
    std::vector<Pos> staircase_;  // laid out by column slot
    std::vector<NodeId> column_nodes_;
    std::vector<NodeId> row_nodes_;

    // suffix start positions in depth-first order of the column tree, so the
    // occurrences of any node form a contiguous rank interval
    std::vector<Pos> start_at_rank_;
    std::vector<std::uint32_t> rank_begin_;  // per column node
    std::vector<std::uint32_t> rank_end_;
    DominanceIndex start_ranks_;             // points (rank, start)
};

}  // namespace idq

#endif  // IDQ_SUBSTRING_STRUCTURE_HPP_
