#include "idq/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string_view>
#include <unordered_map>

namespace idq {

namespace {

// start positions (1-based) of every occurrence of s in text
std::vector<Pos> find_all(const std::string& text, std::string_view s) {
    std::vector<Pos> starts;
    for (std::size_t p = text.find(s); p != std::string::npos; p = text.find(s, p + 1)) {
        starts.push_back(static_cast<Pos>(p) + 1);
    }
    return starts;
}

}  // namespace

Oracle::Oracle(std::string text, const std::vector<Span>& fragments) : text_(std::move(text)) {
    if (text_.empty()) throw EmptyTextError();
    std::map<Span, std::string> by_first;
    std::set<std::string> seen;
    for (const Span& f : fragments) {
        check_span(f.l, f.r, n());
        std::string s = text_.substr(f.l - 1, f.length());
        if (!seen.insert(s).second) continue;
        Pos first = find_all(text_, s).front();
        by_first.emplace(Span{first, first + f.length() - 1}, std::move(s));
    }
    for (auto& [span, s] : by_first) {
        auto id = static_cast<PatternId>(patterns_.size());
        for (Pos start : find_all(text_, s)) {
            occurrences_.push_back(Occurrence{id, start, start + static_cast<Pos>(s.size()) - 1});
        }
        patterns_.push_back(s);
    }
}

std::int64_t Oracle::count(Pos i, Pos j) const {
    return static_cast<std::int64_t>(report(i, j).size());
}

bool Oracle::exists(Pos i, Pos j) const {
    check_span(i, j, n());
    return std::any_of(occurrences_.begin(), occurrences_.end(),
                       [&](const Occurrence& o) { return i <= o.l && o.r <= j; });
}

std::vector<Occurrence> Oracle::report(Pos i, Pos j) const {
    check_span(i, j, n());
    std::vector<Occurrence> out;
    for (const Occurrence& o : occurrences_) {
        if (i <= o.l && o.r <= j) out.push_back(o);
    }
    return out;
}

std::int64_t Oracle::count_distinct(Pos i, Pos j) const {
    return static_cast<std::int64_t>(report_distinct(i, j).size());
}

std::vector<PatternId> Oracle::report_distinct(Pos i, Pos j) const {
    std::vector<PatternId> out;
    for (const Occurrence& o : report(i, j)) {
        if (out.empty() || out.back() != o.pattern) out.push_back(o.pattern);
    }
    return out;
}

Pos Oracle::occ_count(Pos l, Pos r) const {
    check_span(l, r, n());
    return static_cast<Pos>(find_all(text_, std::string_view(text_).substr(l - 1, r - l + 1)).size());
}

Span Oracle::ext(Pos l, Pos r) const {
    const Pos k = occ_count(l, r);
    for (bool grew = true; grew;) {
        grew = false;
        if (l > 1 && occ_count(l - 1, r) == k) {
            --l;
            grew = true;
        } else if (r < n() && occ_count(l, r + 1) == k) {
            ++r;
            grew = true;
        }
    }
    Pos first = find_all(text_, std::string_view(text_).substr(l - 1, r - l + 1)).front();
    return Span{first, first + (r - l)};
}

Pos Oracle::next_start(Pos l, Pos i) const {
    check_span(l, i, n());
    std::string_view s = std::string_view(text_).substr(l - 1, i - l + 1);
    std::size_t p = text_.find(s, static_cast<std::size_t>(l));
    return p == std::string::npos ? kInfinitePos : static_cast<Pos>(p) + 1;
}

Pos Oracle::find_x(Pos l, Pos r) const {
    check_span(l, r, n());
    Pos x = r;
    while (x > l) {
        Pos len = x - l;  // length of T[l, x - 1]
        std::string_view s = std::string_view(text_).substr(l - 1, len);
        bool again = false;
        for (Pos start = l + 1; start + len - 1 <= r; ++start) {
            if (std::string_view(text_).substr(start - 1, len) == s) {
                again = true;
                break;
            }
        }
        if (again) break;
        --x;
    }
    return x;
}

std::vector<OracleClass> classify_substrings(const std::string& text) {
    if (text.empty()) throw EmptyTextError();
    const Pos n = static_cast<Pos>(text.size());
    std::string_view all(text);
    auto piece = [&](Pos l, Pos r) { return all.substr(l - 1, r - l + 1); };

    struct Seen {
        Pos count = 0;
        Pos first = 0;
    };
    std::unordered_map<std::string_view, Seen> seen;
    for (Pos l = 1; l <= n; ++l) {
        for (Pos r = l; r <= n; ++r) {
            Seen& s = seen[piece(l, r)];
            if (s.count++ == 0) s.first = l;
        }
    }

    // ext of every grid point, as the first occurrence of the extension
    std::vector<std::vector<Span>> ext_of(n + 1, std::vector<Span>(n + 1));
    for (Pos l0 = 1; l0 <= n; ++l0) {
        for (Pos r0 = l0; r0 <= n; ++r0) {
            Pos l = l0;
            Pos r = r0;
            const Pos k = seen[piece(l, r)].count;
            for (bool grew = true; grew;) {
                grew = false;
                if (l > 1 && seen[piece(l - 1, r)].count == k) {
                    --l;
                    grew = true;
                } else if (r < n && seen[piece(l, r + 1)].count == k) {
                    ++r;
                    grew = true;
                }
            }
            Pos first = seen[piece(l, r)].first;
            ext_of[l0][r0] = Span{first, first + (r - l)};
        }
    }

    std::map<Span, OracleClass> classes;
    for (Pos l = 1; l <= n; ++l) {
        for (Pos r = l; r <= n; ++r) {
            OracleClass& c = classes[ext_of[l][r]];
            ++c.members;
        }
    }
    for (auto& [rep, c] : classes) {
        c.rep = rep;
        c.occ = seen[piece(rep.l, rep.r)].count;
        c.col_lo = kInfinitePos;
        c.col_hi = 0;
        c.top = 0;
        for (Pos l = rep.l; l <= rep.r; ++l) {
            Pos lowest = 0;
            for (Pos r = l; r <= rep.r; ++r) {
                if (ext_of[l][r] != rep) continue;
                if (lowest == 0) lowest = r;
                c.top = std::max(c.top, r);
            }
            if (lowest == 0) continue;
            c.col_lo = std::min(c.col_lo, l);
            c.col_hi = std::max(c.col_hi, l);
            c.staircase.push_back(lowest);
        }
        c.anchors = find_all(text, piece(rep.l, rep.r));
    }

    std::vector<OracleClass> out;
    out.reserve(classes.size());
    for (auto& [rep, c] : classes) out.push_back(std::move(c));
    return out;
}

}  // namespace idq
