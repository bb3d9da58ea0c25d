#include "idq/distinct_engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "idq/path_access.hpp"

namespace idq {

namespace {

std::vector<NodeId> parents_of(const SuffixTree& tree) {
    std::vector<NodeId> parent(tree.size());
    for (std::size_t v = 0; v < tree.size(); ++v) parent[v] = tree.parent(static_cast<NodeId>(v));
    return parent;
}

}  // namespace

DistinctEngine::DistinctEngine(std::shared_ptr<const QueryEngine> engine)
    : engine_(std::move(engine)), versions_(engine_ ? engine_->index().n() : 1) {
    if (!engine_) throw std::invalid_argument("null query engine");
    sweep_starts();
    sweep_ends();
    build_seed_tables();
    stats_.versioned_nodes = versions_.node_count();
}

void DistinctEngine::sweep_starts() {
    const TextIndex& index = engine_->index();
    const SuffixTree& cols = index.column_tree();
    const Pos n = index.n();
    PathAccess paths(parents_of(cols), kInfinitePos);
    std::vector<PathSegment> segments;

    // blocks are laid out in sweep order: l's block is [begin[l], begin[l - 1])
    next_begin_.assign(static_cast<std::size_t>(n) + 1, 0);
    next_runs_.clear();
    for (Pos l = n; l >= 1; --l) {
        next_begin_[l] = static_cast<std::uint32_t>(next_runs_.size());
        paths.access(cols.position_node(l), l, segments);
        for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
            if (it->deepest == cols.root()) continue;
            next_runs_.push_back(NextRun{l + cols.len(it->deepest) - 1, it->label});
        }
    }
    next_begin_[0] = static_cast<std::uint32_t>(next_runs_.size());
    stats_.next_segments = paths.total_segments();
}

void DistinctEngine::sweep_ends() {
    const QueryEngine& q = *engine_;
    const TextIndex& index = q.index();
    const SuffixTree& rows = index.row_tree();
    const Pos n = index.n();

    // patterns among the suffixes of each row node's longest string
    std::vector<std::int64_t> suffix_patterns(rows.size(), 0);
    std::vector<NodeId> holder(rows.size(), kNoNode);  // lowest ancestor-or-self with patterns
    ancestor_pattern_.assign(rows.size(), kNoPattern);
    for (NodeId u : rows.by_length()) {
        if (u == rows.root()) continue;
        NodeId p = rows.parent(u);
        auto own = q.patterns_on_row_node(u);
        suffix_patterns[u] = suffix_patterns[p] + static_cast<std::int64_t>(own.size());
        holder[u] = own.empty() ? holder[p] : u;
        if (holder[p] != kNoNode) ancestor_pattern_[u] = q.patterns_on_row_node(holder[p]).back();
    }

    struct RangeAdd {
        Pos lo;
        Pos hi;
        std::int64_t value;
    };
    std::vector<RangeAdd> adds;
    std::vector<std::size_t> adds_until(static_cast<std::size_t>(n) + 1, 0);

    use_from_.assign(rows.size(), kInfinitePos);
    PathAccess paths(parents_of(rows), 0);
    std::vector<PathSegment> segments;
    for (Pos r = 1; r <= n; ++r) {
        paths.access(rows.position_node(r), r, segments);

        // nodes seen for the first time end here, at their first-block row
        if (!segments.empty() && segments.front().label == 0) {
            for (NodeId u = segments.front().deepest; u != rows.root(); u = rows.parent(u)) {
                PatternId p = ancestor_pattern_[u];
                if (p != kNoPattern) {
                    Pos target = rows.len(q.pattern(p).row_node);
                    auto seg = std::partition_point(segments.begin(), segments.end(), [&](const PathSegment& s) {
                        return rows.len(s.top) > target;
                    });
                    Pos last_end = seg->label;
                    use_from_[u] = last_end == 0 ? 1 : last_end - q.pattern(p).first.length() + 2;
                }
                if (u == segments.front().top) break;
            }
        }

        Pos g = 0;
        for (const PathSegment& s : segments) {
            NodeId w = s.deepest;
            if (w == rows.root()) break;
            Pos lst = s.label;
            if (suffix_patterns[w] > 0) {
                Pos a = std::max<Pos>(1, g - rows.len(w) + 1);
                Pos b = lst - rows.len(w);
                if (a <= b) adds.push_back(RangeAdd{a, b, suffix_patterns[w]});
            }
            g = lst;
        }
        adds_until[r] = adds.size();
    }
    stats_.end_segments = paths.total_segments();
    stats_.range_adds = adds.size();

    versions_.reserve_for(adds.size());
    for (Pos r = 1; r <= n; ++r) {
        for (std::size_t k = adds_until[r - 1]; k < adds_until[r]; ++k) {
            versions_.range_add(adds[k].lo, adds[k].hi, static_cast<std::uint32_t>(adds[k].value));
        }
        versions_.commit();
    }
}

void DistinctEngine::build_seed_tables() {
    const QueryEngine& q = *engine_;
    const SubstringStructure& st = q.structure();
    const SuffixTree& rows = q.index().row_tree();
    const SuffixTree& cols = q.index().column_tree();

    suffix_pattern_.assign(q.pattern_count(), kNoPattern);
    for (std::size_t u = 1; u < rows.size(); ++u) {
        auto own = q.patterns_on_row_node(static_cast<NodeId>(u));
        for (std::size_t k = 0; k < own.size(); ++k) {
            suffix_pattern_[own[k]] = k == 0 ? ancestor_pattern_[u] : own[k - 1];
        }
    }

    std::vector<Pos> shortest(st.row_slots(), 0);
    std::vector<Pos> useful(st.row_slots(), kInfinitePos);
    for (const EquivClass& c : st.classes()) {
        for (Pos y = c.row_lo; y <= c.top; ++y) {
            NodeId u = st.row_node(c.id, y);
            auto own = q.patterns_on_row_node(u);
            std::uint32_t slot = st.row_slot(c.id, y);
            if (!own.empty()) shortest[slot] = y - q.pattern(own.front()).first.length() + 1;
            useful[slot] = use_from_[u];
        }
    }
    shortest_column_ = RangeExtremum<Pos, std::greater<Pos>>(std::move(shortest));
    useful_column_ = RangeExtremum<Pos>(std::move(useful));

    seeding_column_.assign(cols.size(), kNoNode);
    for (NodeId v : cols.by_length()) {
        if (v == cols.root()) continue;
        ClassId c = st.class_of_node(Tree::kColumn, v);
        const EquivClass& e = st.equiv_class(c);
        Pos x = st.column_of(v);
        std::uint32_t lo = st.row_slot(c, st.staircase(c)[x - e.col_lo]);
        std::uint32_t hi = st.row_slot(c, e.top);
        bool seeds = shortest_column_[shortest_column_.arg(lo, hi)] >= x ||
                     useful_column_[useful_column_.arg(lo, hi)] <= x;
        seeding_column_[v] = seeds ? v : seeding_column_[cols.parent(v)];
    }
}

std::vector<NextOccurrence> DistinctEngine::next_occurrences(Pos l) const {
    check_span(l, l, engine_->index().n());
    std::vector<NextOccurrence> out;
    Pos lo = l;
    for (std::uint32_t k = next_begin_[l]; k < next_begin_[l - 1]; ++k) {
        out.push_back(NextOccurrence{lo, next_runs_[k].hi, next_runs_[k].nxt});
        lo = next_runs_[k].hi + 1;
    }
    return out;
}

Pos DistinctEngine::find_x(Pos l, Pos r) const {
    check_span(l, r, engine_->index().n());
    // nxt + (i - l) strictly increases with i, and exceeds r at i = r
    auto leaf = [&](std::uint32_t k) {
        Pos i = std::min(next_runs_[k].hi, r);
        return static_cast<std::int64_t>(next_runs_[k].nxt) + (i - l) > r;
    };
    std::uint32_t lo = next_begin_[l];
    std::uint32_t hi = next_begin_[l - 1];
    while (lo < hi) {
        std::uint32_t mid = lo + (hi - lo) / 2;
        if (leaf(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Pos seg_lo = lo == next_begin_[l] ? l : next_runs_[lo - 1].hi + 1;
    return static_cast<Pos>(std::max<std::int64_t>(seg_lo, std::int64_t{r} + l - next_runs_[lo].nxt + 1));
}

std::int64_t DistinctEngine::leaf_term(Pos l, Pos r) const {
    Pos x = find_x(l, r);
    return engine_->count(l, r) - (x > l ? engine_->count(l, x - 1) : 0);
}

std::int64_t DistinctEngine::branch_term(Pos l, Pos r) const {
    return leaf_term(l, r) - count_distinct(l, r);
}

std::int64_t DistinctEngine::count_distinct(Pos i, Pos j) const {
    Pos x = find_x(i, j);
    engine_->prefetch(j);
    if (x > i) engine_->prefetch(x - 1);
    // the branch term is stored modulo 2^32; the difference is below 2^31
    std::uint32_t branch = versions_.point_query(static_cast<std::size_t>(j), i);
    std::int64_t leaf = engine_->count(i, j) - (x > i ? engine_->count(i, x - 1) : 0);
    return static_cast<std::int64_t>(static_cast<std::uint32_t>(leaf) - branch);
}

template <typename Emit>
void DistinctEngine::seed_column(ClassId c, Pos x, Pos row_hi, Emit&& emit) const {
    const QueryEngine& q = *engine_;
    const SubstringStructure& st = q.structure();
    const EquivClass& e = st.equiv_class(c);
    Pos row_lo = st.staircase(c)[x - e.col_lo];
    if (row_hi < row_lo) return;
    std::uint32_t lo = st.row_slot(c, row_lo);
    std::uint32_t hi = st.row_slot(c, row_hi);
    auto row_at = [&](std::size_t slot) { return e.row_lo + static_cast<Pos>(slot - e.row_offset); };
    shortest_column_.report(lo, hi, x, [&](std::size_t slot) {
        Pos y = row_at(slot);
        for (PatternId p : q.patterns_on_row_node(st.row_node(c, y))) {
            if (q.pattern(p).first.length() > y - x + 1) break;
            emit(p);
        }
    });
    useful_column_.report(lo, hi, x, [&](std::size_t slot) {
        emit(ancestor_pattern_[st.row_node(c, row_at(slot))]);
    });
}

std::vector<PatternId> DistinctEngine::report_distinct(Pos i, Pos j) const {
    const QueryEngine& q = *engine_;
    const TextIndex& index = q.index();
    check_span(i, j, index.n());
    const SubstringStructure& st = q.structure();
    const SuffixTree& cols = index.column_tree();

    thread_local std::vector<std::uint32_t> marks;
    thread_local std::uint32_t epoch = 0;
    if (++epoch == 0) {
        std::fill(marks.begin(), marks.end(), 0);
        epoch = 1;
    }
    if (marks.size() < q.pattern_count()) marks.resize(q.pattern_count(), 0);

    std::vector<PatternId> out;
    auto emit = [&](PatternId p) {
        for (; p != kNoPattern && marks[p] != epoch; p = suffix_pattern_[p]) {
            marks[p] = epoch;
            out.push_back(p);
        }
    };

    // prefixes of T[i, j] run up the column tree; only the deepest column is partial
    NodeId v = index.locate(Tree::kColumn, i, j);
    Pos x = st.column_of(v);
    seed_column(st.class_of_node(Tree::kColumn, v), x, x + (j - i), emit);
    for (NodeId w = seeding_column_[cols.parent(v)]; w != kNoNode; w = seeding_column_[cols.parent(w)]) {
        ClassId c = st.class_of_node(Tree::kColumn, w);
        seed_column(c, st.column_of(w), st.equiv_class(c).top, emit);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t DistinctEngine::memory_bytes() const {
    return next_begin_.capacity() * sizeof(std::uint32_t) + next_runs_.capacity() * sizeof(NextRun) +
           versions_.memory_bytes() + (suffix_pattern_.capacity() + ancestor_pattern_.capacity()) * sizeof(PatternId) +
           use_from_.capacity() * sizeof(Pos) + shortest_column_.memory_bytes() + useful_column_.memory_bytes() +
           seeding_column_.capacity() * sizeof(NodeId);
}

}  // namespace idq
