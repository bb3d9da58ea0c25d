#ifndef IDQ_ORACLE_HPP_
#define IDQ_ORACLE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "idq/common.hpp"
#include "idq/query_engine.hpp"

namespace idq {

/*
 * Reference answers by direct string comparison. Shares no code with the
 * engines beyond the result types; meant for small texts only.
 */
class Oracle {
public:
    Oracle(std::string text, const std::vector<Span>& fragments);

    Pos n() const { return static_cast<Pos>(text_.size()); }
    std::size_t pattern_count() const { return patterns_.size(); }
    const std::string& pattern(PatternId id) const { return patterns_[id]; }
    // every occurrence of every pattern, sorted by (pattern, l, r)
    const std::vector<Occurrence>& occurrences() const { return occurrences_; }

    std::int64_t count(Pos i, Pos j) const;
    bool exists(Pos i, Pos j) const;
    // sorted
    std::vector<Occurrence> report(Pos i, Pos j) const;
    std::int64_t count_distinct(Pos i, Pos j) const;
    // ascending
    std::vector<PatternId> report_distinct(Pos i, Pos j) const;

    // first occurrence of the longest extension with the same number of occurrences
    Span ext(Pos l, Pos r) const;
    Pos occ_count(Pos l, Pos r) const;
    // smallest t in [l, r] such that no T[l, t'] with t' >= t occurs again
    // starting after l and ending by r
    Pos find_x(Pos l, Pos r) const;
    // smallest start > l at which T[l, i] occurs, kInfinitePos if none
    Pos next_start(Pos l, Pos i) const;

private:
    std::string text_;
    std::vector<std::string> patterns_;
    std::vector<Occurrence> occurrences_;
};

// One class as found by brute force: the grid points of its first block.
struct OracleClass {
    Span rep;
    Pos occ = 0;
    Pos col_lo = 0;
    Pos col_hi = 0;
    Pos top = 0;
    std::vector<Pos> staircase;  // lowest row of each column
    std::vector<Pos> anchors;    // start of every occurrence of rep
    std::int64_t members = 0;    // grid points anywhere in T belonging to the class

    friend bool operator==(const OracleClass&, const OracleClass&) = default;
};

// classes ordered by the first occurrence of their representative
std::vector<OracleClass> classify_substrings(const std::string& text);

}  // namespace idq

#endif  // IDQ_ORACLE_HPP_
