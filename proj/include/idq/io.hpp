#ifndef IDQ_IO_HPP_
#define IDQ_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "idq/common.hpp"
#include "idq/dictionary_index.hpp"

namespace idq {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct DictionaryInput {
    std::string text;
    std::vector<Span> fragments;
};

// "<n> <d>", the text, then d lines "<l> <r>". Fragments outside [1, n]
// raise RangeError naming the line.
DictionaryInput read_dictionary(std::istream& in);
void write_dictionary(std::ostream& out, const DictionaryInput& input);

enum class QueryKind { kExists, kReport, kCount, kCountDistinct, kReportDistinct };

inline constexpr QueryKind kAllQueryKinds[] = {QueryKind::kExists, QueryKind::kReport, QueryKind::kCount,
                                               QueryKind::kCountDistinct, QueryKind::kReportDistinct};

std::string_view kind_name(QueryKind kind);  // EXISTS, REPORT, COUNT, CDIST, RDIST
std::optional<QueryKind> parse_kind(std::string_view name);

struct Query {
    QueryKind kind;
    Pos i;
    Pos j;
    std::size_t line;
};

// "<KIND> <i> <j>" per line, blank lines skipped; requires 1 <= i <= j
std::vector<Query> read_queries(std::istream& in);

// one answer line in the query output format
std::string answer_line(const DictionaryIndex& index, QueryKind kind, Pos i, Pos j);

// Index files hold the inputs plus a few statistics; loading rebuilds the
// structures and checks the statistics against the rebuild.
inline constexpr std::uint32_t kIndexFormatVersion = 1;
void save_index(std::ostream& out, const DictionaryIndex& index);
DictionaryInput load_index(std::istream& in, BuildStats* recorded = nullptr);

}  // namespace idq

#endif  // IDQ_IO_HPP_
