#include "idq/query_engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace idq {

namespace {

// Counting-sort style CSR: groups ids by key, keeping the given order inside
// each group.
void group_by(std::size_t keys, std::span<const PatternId> ids, auto key_of, std::vector<std::uint32_t>& begin,
              std::vector<PatternId>& flat) {
    begin.assign(keys + 1, 0);
    for (PatternId id : ids) ++begin[key_of(id) + 1];
    for (std::size_t k = 0; k < keys; ++k) begin[k + 1] += begin[k];
    flat.assign(ids.size(), kNoPattern);
    std::vector<std::uint32_t> fill(begin.begin(), begin.end() - 1);
    for (PatternId id : ids) flat[fill[key_of(id)]++] = id;
}

}  // namespace

QueryEngine::QueryEngine(std::shared_ptr<const SubstringStructure> structure, std::span<const Span> fragments,
                         EngineOptions options)
    : structure_(std::move(structure)), options_(options) {
    if (!structure_) throw std::invalid_argument("null substring structure");
    attach(fragments);
    accumulate();
    build_dominance();
    build_row_entries();
}

QueryEngine attach_dictionary(std::shared_ptr<const SubstringStructure> structure, std::span<const Span> fragments,
                              EngineOptions options) {
    return QueryEngine(std::move(structure), fragments, options);
}

void QueryEngine::attach(std::span<const Span> fragments) {
    const TextIndex& index = structure_->index();
    const SuffixTree& rows = index.row_tree();
    fragments_.assign(fragments.begin(), fragments.end());

    // Equal strings share a row node and a length, hence a first occurrence.
    std::vector<Span> first(fragments.size());
    for (std::size_t k = 0; k < fragments.size(); ++k) {
        const Span& f = fragments[k];
        NodeId u = index.locate(Tree::kRow, f.l, f.r);
        Pos end = rows.sample(u).r;
        first[k] = Span{end - f.length() + 1, end};
    }
    std::vector<Span> distinct = first;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    patterns_.clear();
    patterns_.reserve(distinct.size());
    for (const Span& s : distinct) {
        NodeId u = index.locate(Tree::kRow, s.l, s.r);
        NodeId v = index.locate(Tree::kColumn, s.l, s.r);
        patterns_.push_back(Pattern{s, u, v, structure_->class_of_node(Tree::kRow, u)});
    }
    fragment_pattern_.resize(fragments.size());
    for (std::size_t k = 0; k < fragments.size(); ++k) {
        fragment_pattern_[k] =
            static_cast<PatternId>(std::lower_bound(distinct.begin(), distinct.end(), first[k]) - distinct.begin());
    }

    std::vector<PatternId> ids(patterns_.size());
    for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = static_cast<PatternId>(k);
    std::vector<PatternId> by_length = ids;
    std::stable_sort(by_length.begin(), by_length.end(), [&](PatternId a, PatternId b) {
        return patterns_[a].first.length() < patterns_[b].first.length();
    });
    group_by(rows.size(), by_length, [&](PatternId p) { return patterns_[p].row_node; }, row_pattern_begin_,
             row_patterns_);
    group_by(index.column_tree().size(), by_length, [&](PatternId p) { return patterns_[p].column_node; },
             column_pattern_begin_, column_patterns_);
    std::vector<PatternId> by_row = ids;
    std::stable_sort(by_row.begin(), by_row.end(), [&](PatternId a, PatternId b) {
        return std::tie(patterns_[a].first.r, patterns_[a].first.l) <
               std::tie(patterns_[b].first.r, patterns_[b].first.l);
    });
    group_by(structure_->class_count(), by_row, [&](PatternId p) { return patterns_[p].cls; }, class_pattern_begin_,
             class_patterns_);
}

void QueryEngine::accumulate() {
    const SubstringStructure& st = *structure_;
    const SuffixTree& rows = st.index().row_tree();
    const SuffixTree& cols = st.index().column_tree();

    // pre of every column node's longest string, parents first
    pre_full_.assign(cols.size(), 0);
    nonzero_column_.assign(cols.size(), kNoNode);
    for (NodeId v : cols.by_length()) {
        if (v == cols.root()) continue;
        NodeId p = cols.parent(v);
        auto own = static_cast<std::int64_t>(patterns_on_column_node(v).size());
        pre_full_[v] = pre_full_[p] + own;
        nonzero_column_[v] = own > 0 ? v : nonzero_column_[p];
    }

    const std::size_t slots = st.column_slots();
    column_prefix_.assign(slots + 1, 0);
    next_column_.assign(slots + 1, static_cast<std::uint32_t>(slots));
    std::vector<std::int64_t> parent_pre(slots, 0);
    for (const EquivClass& c : st.classes()) {
        for (Pos x = c.col_lo; x <= c.col_hi; ++x) {
            parent_pre[st.column_slot(c.id, x)] = pre_full_[cols.parent(st.column_node(c.id, x))];
        }
    }
    for (std::size_t s = 0; s < slots; ++s) column_prefix_[s + 1] = column_prefix_[s] + parent_pre[s];
    for (std::size_t s = slots; s-- > 0;) {
        next_column_[s] = parent_pre[s] > 0 ? static_cast<std::uint32_t>(s) : next_column_[s + 1];
    }

    // patterns of a class on rows up to each row
    std::vector<std::int64_t> rows_up_to(st.row_slots(), 0);
    for (const EquivClass& c : st.classes()) {
        std::int64_t running = 0;
        for (Pos y = c.row_lo; y <= c.top; ++y) {
            running += static_cast<std::int64_t>(patterns_on_row_node(st.row_node(c.id, y)).size());
            rows_up_to[st.row_slot(c.id, y)] = running;
        }
    }

    // suf of every row node's longest string, parents first
    suf_full_.assign(rows.size(), 0);
    nonzero_row_.assign(rows.size(), kNoNode);
    for (NodeId u : rows.by_length()) {
        if (u == rows.root()) continue;
        NodeId p = rows.parent(u);
        ClassId c = st.class_of_node(Tree::kRow, u);
        Pos y = st.row_of(u);
        std::int64_t own = column_sum(c, st.equiv_class(c).col_lo, st.row_end(u)) + rows_up_to[st.row_slot(c, y)];
        suf_full_[u] = suf_full_[p] + own;
        nonzero_row_[u] = own > 0 ? u : nonzero_row_[p];
    }
}

void QueryEngine::build_dominance() {
    const std::size_t classes = structure_->class_count();
    class_dominance_slot_.assign(classes, -1);
    class_dominance_.clear();
    for (std::size_t c = 0; c < classes; ++c) {
        std::uint32_t b = class_pattern_begin_[c];
        std::uint32_t e = class_pattern_begin_[c + 1];
        if (b == e) continue;
        std::vector<PatternPoint> points;
        points.reserve(e - b);
        for (std::uint32_t k = b; k < e; ++k) {
            const Pattern& p = patterns_[class_patterns_[k]];
            points.push_back(PatternPoint{p.first.l, p.first.r, class_patterns_[k]});
        }
        class_dominance_slot_[c] = static_cast<std::int32_t>(class_dominance_.size());
        class_dominance_.emplace_back(std::move(points));
    }
}

std::span<const PatternId> QueryEngine::patterns_on_row_node(NodeId u) const {
    return std::span<const PatternId>(row_patterns_)
        .subspan(row_pattern_begin_[u], row_pattern_begin_[u + 1] - row_pattern_begin_[u]);
}

std::span<const PatternId> QueryEngine::patterns_on_column_node(NodeId v) const {
    return std::span<const PatternId>(column_patterns_)
        .subspan(column_pattern_begin_[v], column_pattern_begin_[v + 1] - column_pattern_begin_[v]);
}

std::int64_t QueryEngine::column_sum(ClassId c, Pos from, Pos to) const {
    if (from > to) return 0;
    return column_prefix_[structure_->column_slot(c, to) + 1] - column_prefix_[structure_->column_slot(c, from)];
}

void QueryEngine::build_row_entries() {
    const SubstringStructure& st = *structure_;
    const SuffixTree& rows = index().row_tree();
    row_entries_.assign(rows.size(), RowEntry{kNoNode, 0, 0, 0, 0, -1, 0});
    for (std::size_t v = 1; v < rows.size(); ++v) {
        auto u = static_cast<NodeId>(v);
        NodeId p = rows.parent(u);
        ClassId c = st.class_of_node(Tree::kRow, u);
        const EquivClass& e = st.equiv_class(c);
        const std::int32_t column_base = static_cast<std::int32_t>(e.column_offset) - e.col_lo;
        const Pos row_end = st.row_end(u);
        row_entries_[v] = RowEntry{p,
                                   rows.len(p),
                                   st.row_of(u),
                                   row_end,
                                   column_base,
                                   class_dominance_slot_[c],
                                   suf_full_[p] + column_prefix_[static_cast<std::size_t>(column_base + row_end + 1)]};
    }
    const Pos n = index().n();
    position_entries_.assign(static_cast<std::size_t>(n) + 1, RowEntry{kNoNode, 0, 0, 0, 0, -1, 0});
    for (Pos j = 1; j <= n; ++j) position_entries_[j] = row_entries_[rows.position_node(j)];
}

std::pair<const QueryEngine::RowEntry*, Pos> QueryEngine::find_row(Pos i, Pos j) const {
    check_span(i, j, index().n());
    const SuffixTree& rows = index().row_tree();
    const Pos length = j - i + 1;
    const RowEntry* e = &position_entries_[j];
    if (e->parent_len < length) return {e, i - j + e->y};
    // usually a close ancestor
    NodeId v = e->parent;
    for (int step = 0; step < 3; ++step) {
        e = &row_entries_[v];
        if (e->parent_len < length) return {e, i - j + e->y};
        v = e->parent;
    }
    e = &row_entries_[rows.weighted_ancestor(v, length)];
    return {e, i - j + e->y};
}

std::int64_t QueryEngine::outside_block(const RowEntry& e, Pos x) const {
    return e.suf_through_end - column_prefix_[static_cast<std::size_t>(e.column_base + std::min(x, e.row_end + 1))];
}

std::int64_t QueryEngine::count(Pos i, Pos j) const {
    auto [e, x] = find_row(i, j);
    std::int64_t result = outside_block(*e, x);
    if (e->dominance >= 0 && !options_.drop_dominance_term) {
        result += static_cast<std::int64_t>(class_dominance_[e->dominance].count(x, e->y));
    }
    return result;
}

bool QueryEngine::exists(Pos i, Pos j) const {
    auto [e, x] = find_row(i, j);
    if (outside_block(*e, x) > 0) return true;
    return e->dominance >= 0 && class_dominance_[e->dominance].exists(x, e->y);
}

void QueryEngine::report_prefixes(NodeId column_node, Pos start, std::vector<Occurrence>& out) const {
    const SuffixTree& cols = index().column_tree();
    for (NodeId a = nonzero_column_[column_node]; a != kNoNode; a = nonzero_column_[cols.parent(a)]) {
        for (PatternId id : patterns_on_column_node(a)) {
            out.push_back(Occurrence{id, start, start + patterns_[id].first.length() - 1});
        }
    }
}

void QueryEngine::report_columns(ClassId c, Pos from, Pos to, Pos shift, std::vector<Occurrence>& out) const {
    if (from > to) return;
    const SubstringStructure& st = *structure_;
    const SuffixTree& cols = index().column_tree();
    const EquivClass& e = st.equiv_class(c);
    std::uint32_t last = st.column_slot(c, to);
    for (std::uint32_t s = next_column_[st.column_slot(c, from)]; s <= last; s = next_column_[s + 1]) {
        Pos x = e.col_lo + static_cast<Pos>(s - e.column_offset);
        report_prefixes(cols.parent(st.column_node(c, x)), x + shift, out);
    }
}

std::vector<Occurrence> QueryEngine::report(Pos i, Pos j) const {
    check_span(i, j, index().n());
    const SubstringStructure& st = *structure_;
    const SuffixTree& rows = index().row_tree();
    std::vector<Occurrence> out;

    const Placement p = st.place(i, j);
    std::int32_t slot = class_dominance_slot_[p.cls];
    if (slot >= 0 && !options_.drop_dominance_term) {
        class_dominance_[slot].for_each(p.x, p.y, [&](const PatternPoint& q) {
            out.push_back(Occurrence{q.pattern_id, q.l + p.shift, q.r + p.shift});
        });
    }
    report_columns(p.cls, p.x, st.row_end(p.row_node), p.shift, out);

    // shorter suffixes of T[i, j]: whole rows of the row-tree ancestors
    for (NodeId w = nonzero_row_[rows.parent(p.row_node)]; w != kNoNode; w = nonzero_row_[rows.parent(w)]) {
        ClassId c = st.class_of_node(Tree::kRow, w);
        Pos y = st.row_of(w);
        Pos shift = j - y;
        report_columns(c, st.equiv_class(c).col_lo, st.row_end(w), shift, out);
        for (std::uint32_t k = class_pattern_begin_[c]; k < class_pattern_begin_[c + 1]; ++k) {
            const Pattern& q = patterns_[class_patterns_[k]];
            if (q.first.r > y) break;
            out.push_back(Occurrence{class_patterns_[k], q.first.l + shift, q.first.r + shift});
        }
    }
    return out;
}

std::size_t QueryEngine::memory_bytes() const {
    std::size_t bytes = fragments_.capacity() * sizeof(Span) + fragment_pattern_.capacity() * sizeof(PatternId) +
                        patterns_.capacity() * sizeof(Pattern) +
                        (row_pattern_begin_.capacity() + column_pattern_begin_.capacity() +
                         class_pattern_begin_.capacity() + next_column_.capacity()) *
                            sizeof(std::uint32_t) +
                        (row_patterns_.capacity() + column_patterns_.capacity() + class_patterns_.capacity()) *
                            sizeof(PatternId) +
                        (pre_full_.capacity() + suf_full_.capacity() + column_prefix_.capacity()) *
                            sizeof(std::int64_t) +
                        (nonzero_row_.capacity() + nonzero_column_.capacity()) * sizeof(NodeId) +
                        class_dominance_slot_.capacity() * sizeof(std::int32_t) + (row_entries_.capacity() + position_entries_.capacity()) * sizeof(RowEntry);
    for (const auto& d : class_dominance_) bytes += d.memory_bytes() + sizeof(DominanceIndex);
    return bytes;
}

}  // namespace idq
