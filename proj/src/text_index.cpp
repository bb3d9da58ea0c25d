#include "idq/text_index.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace idq {

void check_span(Pos l, Pos r, Pos n) {
    if (l < 1 || r > n || l > r) {
        throw RangeError("span [" + std::to_string(l) + ", " + std::to_string(r) +
                         "] is not within [1, " + std::to_string(n) + "]");
    }
}

namespace {

// Suffix automaton with transitions kept in a pooled singly linked list per
// state. The link tree survives construction, plus what the transitions say
// about suffix links and forced extensions.
class Automaton {
public:
    explicit Automaton(std::size_t length) {
        len_.reserve(2 * length + 1);
        link_.reserve(2 * length + 1);
        head_.reserve(2 * length + 1);
        edges_.reserve(3 * length + 1);
        prefix_state_.assign(length + 1, 0);
        new_state(0, kNoNode);
    }

    void extend(std::uint8_t c, std::size_t step) {
        NodeId cur = new_state(len_[last_] + 1, kNoNode);
        NodeId p = last_;
        while (p != kNoNode && find(p, c) == kNoNode) {
            add(p, c, cur);
            p = link_[p];
        }
        if (p == kNoNode) {
            link_[cur] = 0;
        } else {
            NodeId q = find(p, c);
            if (len_[p] + 1 == len_[q]) {
                link_[cur] = q;
            } else {
                NodeId clone = new_state(len_[p] + 1, link_[q]);
                for (std::int32_t e = head_[q]; e != -1; e = edges_[e].next) {
                    add(clone, edges_[e].symbol, edges_[e].target);
                }
                while (p != kNoNode && find(p, c) == q) {
                    redirect(p, c, clone);
                    p = link_[p];
                }
                link_[q] = clone;
                link_[cur] = clone;
            }
        }
        last_ = cur;
        prefix_state_[step] = cur;
    }

    // Per state: the state reached by a solid transition into it (its longest
    // string minus the last symbol), and the only transition target when the
    // state has exactly one transition and is not a suffix of the input.
    void derive(std::vector<NodeId>& shorter, std::vector<NodeId>& forced) const {
        const std::size_t size = len_.size();
        shorter.assign(size, kNoNode);
        forced.assign(size, kNoNode);
        std::vector<bool> terminal(size, false);
        for (NodeId v = last_; v != kNoNode; v = link_[v]) terminal[v] = true;
        for (std::size_t v = 0; v < size; ++v) {
            std::int32_t e = head_[v];
            if (e != -1 && edges_[e].next == -1 && !terminal[v]) forced[v] = edges_[e].target;
            for (; e != -1; e = edges_[e].next) {
                NodeId t = edges_[e].target;
                if (len_[t] == len_[v] + 1) shorter[t] = static_cast<NodeId>(v);
            }
        }
    }

    std::vector<Pos> len_;
    std::vector<NodeId> link_;
    std::vector<NodeId> prefix_state_;

private:
    struct Edge {
        std::uint8_t symbol;
        NodeId target;
        std::int32_t next;
    };

    NodeId new_state(Pos len, NodeId link) {
        len_.push_back(len);
        link_.push_back(link);
        head_.push_back(-1);
        return static_cast<NodeId>(len_.size() - 1);
    }

    NodeId find(NodeId v, std::uint8_t c) const {
        for (std::int32_t e = head_[v]; e != -1; e = edges_[e].next) {
            if (edges_[e].symbol == c) return edges_[e].target;
        }
        return kNoNode;
    }

    void add(NodeId v, std::uint8_t c, NodeId to) {
        edges_.push_back({c, to, head_[v]});
        head_[v] = static_cast<std::int32_t>(edges_.size() - 1);
    }

    void redirect(NodeId v, std::uint8_t c, NodeId to) {
        for (std::int32_t e = head_[v]; e != -1; e = edges_[e].next) {
            if (edges_[e].symbol == c) {
                edges_[e].target = to;
                return;
            }
        }
    }

    std::vector<std::int32_t> head_;
    std::vector<Edge> edges_;
    NodeId last_ = 0;
};

}  // namespace

Span SuffixTree::sample(NodeId v) const {
    if (len_[v] == 0) return {0, 0};
    if (kind_ == Tree::kColumn) return {anchor_[v], anchor_[v] + len_[v] - 1};
    return {anchor_[v] - len_[v] + 1, anchor_[v]};
}

std::span<const ChildEdge> SuffixTree::children(NodeId v) const {
    return std::span<const ChildEdge>(child_edges_).subspan(child_begin_[v],
                                                            child_begin_[v + 1] - child_begin_[v]);
}

NodeId SuffixTree::weighted_ancestor(NodeId v, Pos length) const {
    // the answer is usually a few steps up
    for (int step = 0; step < 4; ++step) {
        NodeId p = parent_[v];
        if (p == kNoNode || len_[p] < length) return v;
        v = p;
    }
    for (std::size_t k = jump_.size(); k-- > 0;) {
        NodeId w = jump_[k][v];
        if (len_[w] >= length) v = w;
    }
    return v;
}

TextIndex::TextIndex(std::string text) : text_(std::move(text)) {
    if (text_.empty()) throw EmptyTextError();
    build_tree(Tree::kRow);
    build_tree(Tree::kColumn);
}

void TextIndex::build_tree(Tree which) {
    const Pos n = this->n();
    SuffixTree& tree = which == Tree::kRow ? row_ : column_;
    tree.kind_ = which;

    // The row tree is the link tree of the automaton of T, the column tree
    // the link tree of the automaton of rev(T).
    Automaton automaton(static_cast<std::size_t>(n));
    for (Pos step = 1; step <= n; ++step) {
        Pos p = which == Tree::kRow ? step : n - step + 1;
        automaton.extend(at(p), static_cast<std::size_t>(step));
    }

    const std::size_t size = automaton.len_.size();
    automaton.derive(tree.link_, tree.extension_);
    tree.link_[0] = kNoNode;
    tree.len_ = std::move(automaton.len_);
    tree.parent_ = std::move(automaton.link_);
    tree.position_node_.assign(n + 1, kNoNode);

    // Bucket by length so every parent precedes its children.
    std::vector<std::uint32_t> bucket(n + 2, 0);
    for (Pos len : tree.len_) ++bucket[len + 1];
    for (Pos k = 1; k <= n + 1; ++k) bucket[k] += bucket[k - 1];
    tree.by_length_.assign(size, 0);
    for (std::size_t v = 0; v < size; ++v) {
        tree.by_length_[bucket[tree.len_[v]]++] = static_cast<NodeId>(v);
    }

    // Steps of the automaton correspond to end positions of T (row tree) or
    // to start positions n - step + 1 (column tree).
    tree.occ_.assign(size, 0);
    tree.anchor_.assign(size, kInfinitePos);
    for (Pos step = 1; step <= n; ++step) {
        NodeId v = automaton.prefix_state_[step];
        Pos p = which == Tree::kRow ? step : n - step + 1;
        tree.position_node_[p] = v;
        tree.occ_[v] = 1;
        tree.anchor_[v] = p;
    }
    for (std::size_t k = size; k-- > 1;) {
        NodeId v = tree.by_length_[k];
        NodeId p = tree.parent_[v];
        tree.occ_[p] += tree.occ_[v];
        tree.anchor_[p] = std::min(tree.anchor_[p], tree.anchor_[v]);
    }
    tree.anchor_[0] = 0;

    finish_tree(tree);
}

void TextIndex::finish_tree(SuffixTree& tree) {
    const std::size_t size = tree.size();

    // children sorted by the symbol that leaves the parent's longest string
    std::vector<std::uint32_t> degree(size + 1, 0);
    for (std::size_t v = 1; v < size; ++v) ++degree[tree.parent_[v]];
    tree.child_begin_.assign(size + 1, 0);
    for (std::size_t v = 0; v < size; ++v) tree.child_begin_[v + 1] = tree.child_begin_[v] + degree[v];
    tree.child_edges_.assign(size - 1, ChildEdge{0, kNoNode});
    std::vector<std::uint32_t> fill(tree.child_begin_.begin(), tree.child_begin_.end() - 1);
    for (std::size_t v = 1; v < size; ++v) {
        NodeId p = tree.parent_[v];
        Pos at_pos = tree.kind_ == Tree::kColumn ? tree.anchor_[v] + tree.len_[p]
                                                 : tree.anchor_[v] - tree.len_[p];
        tree.child_edges_[fill[p]++] = ChildEdge{at(at_pos), static_cast<NodeId>(v)};
    }
    for (std::size_t v = 0; v < size; ++v) {
        std::sort(tree.child_edges_.begin() + tree.child_begin_[v],
                  tree.child_edges_.begin() + tree.child_begin_[v + 1],
                  [](const ChildEdge& a, const ChildEdge& b) { return a.symbol < b.symbol; });
    }

    // binary lifting for weighted ancestors; the root points to itself
    std::size_t levels = std::max<std::size_t>(1, std::bit_width(size));
    tree.jump_.assign(levels, std::vector<NodeId>(size, 0));
    for (std::size_t v = 1; v < size; ++v) tree.jump_[0][v] = tree.parent_[v];
    for (std::size_t k = 1; k < levels; ++k) {
        const auto& prev = tree.jump_[k - 1];
        auto& cur = tree.jump_[k];
        for (std::size_t v = 0; v < size; ++v) cur[v] = prev[prev[v]];
    }
}

NodeId TextIndex::locate(Tree which, Pos l, Pos r) const {
    check_span(l, r, n());
    const SuffixTree& t = tree(which);
    NodeId from = which == Tree::kColumn ? t.position_node(l) : t.position_node(r);
    return t.weighted_ancestor(from, r - l + 1);
}

NodeInfo TextIndex::node_info(Tree which, NodeId v) const {
    const SuffixTree& t = tree(which);
    if (!t.contains(v)) throw LookupError("unknown node id " + std::to_string(v));
    NodeId parent = v == t.root() ? t.root() : t.parent(v);
    return NodeInfo{t.len(v), parent, t.sample(v)};
}

std::size_t TextIndex::memory_bytes() const {
    auto tree_bytes = [](const SuffixTree& t) {
        std::size_t bytes = t.parent_.capacity() * sizeof(NodeId) + t.len_.capacity() * sizeof(Pos) +
                            t.anchor_.capacity() * sizeof(Pos) + t.occ_.capacity() * sizeof(Pos) +
                            t.link_.capacity() * sizeof(NodeId) + t.extension_.capacity() * sizeof(NodeId) +
                            t.child_begin_.capacity() * sizeof(std::uint32_t) +
                            t.child_edges_.capacity() * sizeof(ChildEdge) +
                            t.position_node_.capacity() * sizeof(NodeId) +
                            t.by_length_.capacity() * sizeof(NodeId);
        for (const auto& level : t.jump_) bytes += level.capacity() * sizeof(NodeId);
        return bytes;
    };
    return text_.capacity() + tree_bytes(row_) + tree_bytes(column_);
}

}  // namespace idq
