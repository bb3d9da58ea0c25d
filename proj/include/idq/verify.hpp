#ifndef IDQ_VERIFY_HPP_
#define IDQ_VERIFY_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "idq/common.hpp"
#include "idq/dictionary_index.hpp"
#include "idq/io.hpp"
#include "idq/oracle.hpp"

namespace idq {

struct Mismatch {
    QueryKind kind;
    Pos i;
    Pos j;
    std::string engine;
    std::string oracle;
};

// the oracle's answer in the query output format (REPORT sorted)
std::string oracle_answer_line(const Oracle& oracle, QueryKind kind, Pos i, Pos j);

std::vector<Span> all_spans(Pos n);
std::vector<Span> random_spans(std::uint64_t seed, Pos n, std::size_t k);

// Compares every kind on every span; returns the number of comparisons.
// REPORT answers are compared as sets.
std::uint64_t verify_spans(const DictionaryIndex& index, const Oracle& oracle, const std::vector<Span>& spans,
                           const std::function<void(const Mismatch&)>& on_mismatch);

}  // namespace idq

#endif  // IDQ_VERIFY_HPP_
