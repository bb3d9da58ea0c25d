#include "idq/substring_structure.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace idq {

SubstringStructure::SubstringStructure(std::shared_ptr<const TextIndex> index) : index_(std::move(index)) {
    if (!index_) throw std::invalid_argument("null text index");
    build_classes();
    build_block_ranks();
}

void SubstringStructure::build_classes() {
    const TextIndex& index = *index_;
    const SuffixTree& rows = index.row_tree();
    const SuffixTree& cols = index.column_tree();

    // A longest string of a row node is a representative iff it is also the
    // longest string of its column node, i.e. no symbol follows all of its
    // occurrences. Otherwise the node joins the class of that one-symbol
    // extension, which sits on a longer row node.
    std::vector<ClassId> provisional(rows.size(), kNoClass);
    std::vector<NodeId> rep_node;
    auto order = rows.by_length();
    for (std::size_t k = order.size(); k-- > 1;) {
        NodeId u = order[k];
        NodeId longer = rows.forced_extension(u);
        if (longer == kNoNode) {
            provisional[u] = static_cast<ClassId>(rep_node.size());
            rep_node.push_back(u);
        } else {
            provisional[u] = provisional[longer];
        }
    }

    // final ids follow the first occurrence of the representative
    std::vector<ClassId> by_rep(rep_node.size());
    std::iota(by_rep.begin(), by_rep.end(), 0);
    std::sort(by_rep.begin(), by_rep.end(),
              [&](ClassId a, ClassId b) { return rows.sample(rep_node[a]) < rows.sample(rep_node[b]); });
    std::vector<ClassId> final_id(rep_node.size());
    for (std::size_t k = 0; k < by_rep.size(); ++k) final_id[by_rep[k]] = static_cast<ClassId>(k);

    row_class_.assign(rows.size(), kNoClass);
    for (std::size_t u = 1; u < rows.size(); ++u) row_class_[u] = final_id[provisional[u]];

    // The same on the column tree, extending to the left. Column nodes of
    // representatives are matched to classes through their common first
    // occurrence.
    std::vector<NodeId> column_reps;
    for (NodeId v : cols.by_length()) {
        if (v != cols.root() && cols.forced_extension(v) == kNoNode) column_reps.push_back(v);
    }
    if (column_reps.size() != rep_node.size()) {
        throw std::logic_error("substring structure: representative counts differ between the trees");
    }
    std::sort(column_reps.begin(), column_reps.end(),
              [&](NodeId a, NodeId b) { return cols.sample(a) < cols.sample(b); });
    column_class_.assign(cols.size(), kNoClass);
    for (std::size_t k = 0; k < column_reps.size(); ++k) {
        if (cols.sample(column_reps[k]) != rows.sample(rep_node[by_rep[k]])) {
            throw std::logic_error("substring structure: representatives differ between the trees");
        }
        column_class_[column_reps[k]] = static_cast<ClassId>(k);
    }
    auto column_order = cols.by_length();
    for (std::size_t k = column_order.size(); k-- > 1;) {
        NodeId v = column_order[k];
        NodeId longer = cols.forced_extension(v);
        if (longer != kNoNode) column_class_[v] = column_class_[longer];
    }

    classes_.resize(rep_node.size());
    for (std::size_t k = 0; k < rep_node.size(); ++k) {
        NodeId u = rep_node[by_rep[k]];
        EquivClass& c = classes_[k];
        c.id = static_cast<ClassId>(k);
        c.rep = rows.sample(u);
        c.occ = rows.occurrences(u);
        c.col_lo = c.rep.l;
        c.col_hi = c.rep.l - 1;
        c.top = c.rep.r;
        c.row_lo = c.rep.r + 1;
    }

    // Columns of a class are consecutive starting at rep.l, rows consecutive
    // ending at rep.r; count them to lay out the per-class tables.
    for (std::size_t v = 1; v < cols.size(); ++v) {
        EquivClass& c = classes_[column_class_[v]];
        c.col_hi = std::max(c.col_hi, column_of(static_cast<NodeId>(v)));
    }
    for (std::size_t u = 1; u < rows.size(); ++u) {
        EquivClass& c = classes_[row_class_[u]];
        c.row_lo = std::min(c.row_lo, row_of(static_cast<NodeId>(u)));
    }
    std::uint32_t column_total = 0;
    std::uint32_t row_total = 0;
    for (EquivClass& c : classes_) {
        c.column_offset = column_total;
        c.row_offset = row_total;
        column_total += static_cast<std::uint32_t>(c.col_hi - c.col_lo + 1);
        row_total += static_cast<std::uint32_t>(c.top - c.row_lo + 1);
    }
    if (column_total != cols.size() - 1 || row_total != rows.size() - 1) {
        throw std::logic_error("substring structure: blocks are not contiguous");
    }

    column_nodes_.assign(column_total, kNoNode);
    staircase_.assign(column_total, 0);
    for (std::size_t v = 1; v < cols.size(); ++v) {
        auto node = static_cast<NodeId>(v);
        ClassId c = column_class_[v];
        Pos x = column_of(node);
        std::uint32_t slot = column_slot(c, x);
        column_nodes_[slot] = node;
        staircase_[slot] = x + cols.len(cols.parent(node));
    }
    row_nodes_.assign(row_total, kNoNode);
    for (std::size_t u = 1; u < rows.size(); ++u) {
        auto node = static_cast<NodeId>(u);
        row_nodes_[row_slot(row_class_[u], row_of(node))] = node;
    }
    for (const EquivClass& c : classes_) {
        if (c.row_lo != staircase_[c.column_offset]) {
            throw std::logic_error("substring structure: bottom row disagrees with the staircase");
        }
    }
}

void SubstringStructure::build_block_ranks() {
    const SuffixTree& cols = index_->column_tree();
    const Pos n = index_->n();
    std::vector<Pos> position_of(cols.size(), 0);
    for (Pos p = 1; p <= n; ++p) position_of[cols.position_node(p)] = p;

    start_at_rank_.clear();
    start_at_rank_.reserve(n);
    rank_begin_.assign(cols.size(), 0);
    rank_end_.assign(cols.size(), 0);
    // iterative preorder; a node's own start precedes its children's
    std::vector<std::pair<NodeId, bool>> stack{{cols.root(), false}};
    while (!stack.empty()) {
        auto [v, done] = stack.back();
        stack.pop_back();
        if (done) {
            rank_end_[v] = static_cast<std::uint32_t>(start_at_rank_.size());
            continue;
        }
        rank_begin_[v] = static_cast<std::uint32_t>(start_at_rank_.size());
        if (position_of[v] != 0) start_at_rank_.push_back(position_of[v]);
        stack.emplace_back(v, true);
        auto kids = cols.children(v);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.emplace_back(it->node, false);
    }

    std::vector<PatternPoint> points;
    points.reserve(start_at_rank_.size());
    for (std::size_t k = 0; k < start_at_rank_.size(); ++k) {
        points.push_back(PatternPoint{static_cast<Pos>(k), start_at_rank_[k], kNoPattern});
    }
    start_ranks_ = DominanceIndex(std::move(points));
}

std::span<const Pos> SubstringStructure::staircase(ClassId c) const {
    const EquivClass& e = classes_[c];
    return std::span<const Pos>(staircase_).subspan(e.column_offset, static_cast<std::size_t>(e.col_hi - e.col_lo + 1));
}

Pos SubstringStructure::row_end(NodeId row_node) const {
    const SuffixTree& rows = index_->row_tree();
    return row_of(row_node) - rows.len(rows.parent(row_node));
}

Placement SubstringStructure::place(Pos l, Pos r) const {
    NodeId u = index_->locate(Tree::kRow, l, r);
    Pos y = row_of(u);
    Pos shift = r - y;
    return Placement{u, row_class_[u], l - shift, y, shift};
}

Span SubstringStructure::ext(Pos l, Pos r) const {
    return classes_[place(l, r).cls].rep;
}

BlockCoord SubstringStructure::class_of(Pos l, Pos r) const {
    Placement p = place(l, r);
    const EquivClass& c = classes_[p.cls];
    NodeId rep_column = index_->locate(Tree::kColumn, c.rep.l, c.rep.r);
    Pos start = c.rep.l + p.shift;
    // occurrences of rep starting before this block's start
    auto before = start_ranks_.count(static_cast<Pos>(rank_begin_[rep_column]), start - 1) -
                  start_ranks_.count(static_cast<Pos>(rank_end_[rep_column]), start - 1);
    return BlockCoord{p.cls, static_cast<Pos>(before) + 1, p.x - c.col_lo, p.y - c.row_lo};
}

Pos SubstringStructure::occ_count(Pos l, Pos r) const {
    return classes_[place(l, r).cls].occ;
}

std::vector<Pos> SubstringStructure::anchors(ClassId c) const {
    const EquivClass& e = classes_[c];
    NodeId rep_column = index_->locate(Tree::kColumn, e.rep.l, e.rep.r);
    std::vector<Pos> starts(start_at_rank_.begin() + rank_begin_[rep_column],
                            start_at_rank_.begin() + rank_end_[rep_column]);
    std::sort(starts.begin(), starts.end());
    return starts;
}

void SubstringStructure::dump(std::ostream& out) const {
    for (const EquivClass& c : classes_) {
        out << "class " << c.id << " rep=" << c.rep.l << ',' << c.rep.r << " occ=" << c.occ
            << " cols=" << c.col_lo << ".." << c.col_hi << " top=" << c.top << " A=";
        auto a = staircase(c.id);
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (k > 0) out << ',';
            out << a[k];
        }
        out << '\n';
    }
}

std::size_t SubstringStructure::memory_bytes() const {
    return classes_.capacity() * sizeof(EquivClass) + row_class_.capacity() * sizeof(ClassId) +
           column_class_.capacity() * sizeof(ClassId) + staircase_.capacity() * sizeof(Pos) +
           column_nodes_.capacity() * sizeof(NodeId) + row_nodes_.capacity() * sizeof(NodeId) +
           start_at_rank_.capacity() * sizeof(Pos) + rank_begin_.capacity() * sizeof(std::uint32_t) +
           rank_end_.capacity() * sizeof(std::uint32_t) + start_ranks_.memory_bytes();
}

}  // namespace idq
