#ifndef IDQ_TEXT_INDEX_HPP_
#define IDQ_TEXT_INDEX_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idq/common.hpp"

namespace idq {

/*
 * Which of the two suffix trees over the text.
 *
 * kColumn is the suffix tree of T. A node holds the substrings that share one
 * set of start positions; they are prefixes of the node's longest string, so
 * in the grid of (start, end) points they lie along a column.
 *
 * kRow is the suffix tree of rev(T) with every label reversed back. A node
 * holds the substrings sharing one set of end positions; they are suffixes of
 * the node's longest string and lie along a grid row.
 */
enum class Tree { kRow, kColumn };

struct ChildEdge {
    std::uint8_t symbol;
    NodeId node;
};

struct NodeInfo {
    Pos len;
    NodeId parent;
    Span sample;  // first occurrence of the longest string; {0,0} at the root
};

class SuffixTree {
public:
    SuffixTree() = default;

    NodeId root() const { return 0; }
    std::size_t size() const { return len_.size(); }
    bool contains(NodeId v) const { return v >= 0 && static_cast<std::size_t>(v) < size(); }

    // kNoNode for the root
    NodeId parent(NodeId v) const { return parent_[v]; }
    Pos len(NodeId v) const { return len_[v]; }
    // first occurrence of the longest string at v
    Span sample(NodeId v) const;
    // number of occurrences of any string at v
    Pos occurrences(NodeId v) const { return occ_[v]; }
    // node of the longest string with its outermost symbol removed (the first
    // symbol on the column tree, the last one on the row tree)
    NodeId suffix_link(NodeId v) const { return link_[v]; }
    // Node of the longest string at v extended by the one symbol that follows
    // (row tree) or precedes (column tree) every occurrence; kNoNode when the
    // symbol is not unique or an occurrence touches the end (start) of T.
    NodeId forced_extension(NodeId v) const { return extension_[v]; }
    std::span<const ChildEdge> children(NodeId v) const;

    // Column tree: the node of T[p, n]. Row tree: the node of T[1, p].
    NodeId position_node(Pos p) const { return position_node_[p]; }

    // the ancestor-or-self w of v with len(parent(w)) < length <= len(w);
    // requires 1 <= length <= len(v)
    NodeId weighted_ancestor(NodeId v, Pos length) const;

    // all nodes, ordered by non-decreasing len (root first)
    std::span<const NodeId> by_length() const { return by_length_; }

private:
    friend class TextIndex;

    Tree kind_ = Tree::kColumn;
    std::vector<NodeId> parent_;
    std::vector<Pos> len_;
    // first start position (column tree) or first end position (row tree)
    std::vector<Pos> anchor_;
    std::vector<Pos> occ_;
    std::vector<NodeId> link_;
    std::vector<NodeId> extension_;
    std::vector<std::uint32_t> child_begin_;
    std::vector<ChildEdge> child_edges_;
    std::vector<NodeId> position_node_;  // index 1..n
    std::vector<NodeId> by_length_;
    std::vector<std::vector<NodeId>> jump_;  // jump_[k][v] = 2^k-th ancestor
};

/*
 * The text plus both suffix trees. Immutable after construction.
 */
class TextIndex {
public:
    // throws EmptyTextError for an empty text
    explicit TextIndex(std::string text);

    const std::string& text() const { return text_; }
    Pos n() const { return static_cast<Pos>(text_.size()); }
    // 1-based symbol access
    std::uint8_t at(Pos p) const { return static_cast<std::uint8_t>(text_[p - 1]); }
    std::string_view substr(Pos l, Pos r) const { return std::string_view(text_).substr(l - 1, r - l + 1); }

    const SuffixTree& tree(Tree which) const { return which == Tree::kRow ? row_ : column_; }
    const SuffixTree& row_tree() const { return row_; }
    const SuffixTree& column_tree() const { return column_; }

    // the node of the chosen tree whose string set contains T[l, r]
    NodeId locate(Tree which, Pos l, Pos r) const;

    NodeInfo node_info(Tree which, NodeId v) const;

    std::size_t memory_bytes() const;

private:
    void build_tree(Tree which);
    void finish_tree(SuffixTree& tree);

    std::string text_;
    SuffixTree row_;
    SuffixTree column_;
};

}  // namespace idq

#endif  // IDQ_TEXT_INDEX_HPP_
