#include "idq/verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace idq {

namespace {

std::string format_report(std::vector<Occurrence> occurrences) {
    std::sort(occurrences.begin(), occurrences.end());
    std::ostringstream out;
    out << occurrences.size();
    for (const Occurrence& o : occurrences) out << ' ' << o.pattern << ' ' << o.l << ' ' << o.r;
    return out.str();
}

}  // namespace

std::string oracle_answer_line(const Oracle& oracle, QueryKind kind, Pos i, Pos j) {
    std::ostringstream out;
    switch (kind) {
        case QueryKind::kExists:
            out << (oracle.exists(i, j) ? 1 : 0);
            break;
        case QueryKind::kCount:
            out << oracle.count(i, j);
            break;
        case QueryKind::kCountDistinct:
            out << oracle.count_distinct(i, j);
            break;
        case QueryKind::kReport:
            return format_report(oracle.report(i, j));
        case QueryKind::kReportDistinct: {
            auto ids = oracle.report_distinct(i, j);
            out << ids.size();
            for (PatternId p : ids) out << ' ' << p;
            break;
        }
    }
    return out.str();
}

std::vector<Span> all_spans(Pos n) {
    std::vector<Span> spans;
    spans.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (Pos i = 1; i <= n; ++i) {
        for (Pos j = i; j <= n; ++j) spans.push_back(Span{i, j});
    }
    return spans;
}

std::vector<Span> random_spans(std::uint64_t seed, Pos n, std::size_t k) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Pos> pos(1, n);
    std::vector<Span> spans(k);
    for (Span& s : spans) {
        Pos a = pos(rng);
        Pos b = pos(rng);
        s = Span{std::min(a, b), std::max(a, b)};
    }
    return spans;
}

std::uint64_t verify_spans(const DictionaryIndex& index, const Oracle& oracle, const std::vector<Span>& spans,
                           const std::function<void(const Mismatch&)>& on_mismatch) {
    std::uint64_t checked = 0;
    for (const Span& s : spans) {
        for (QueryKind kind : kAllQueryKinds) {
            std::string mine = kind == QueryKind::kReport ? format_report(index.report(s.l, s.r))
                                                          : answer_line(index, kind, s.l, s.r);
            std::string expected = oracle_answer_line(oracle, kind, s.l, s.r);
            if (mine != expected) on_mismatch(Mismatch{kind, s.l, s.r, mine, expected});
            ++checked;
        }
    }
    return checked;
}

}  // namespace idq
