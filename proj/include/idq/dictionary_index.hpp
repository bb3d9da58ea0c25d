#ifndef IDQ_DICTIONARY_INDEX_HPP_
#define IDQ_DICTIONARY_INDEX_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "idq/common.hpp"
#include "idq/distinct_engine.hpp"
#include "idq/query_engine.hpp"
#include "idq/substring_structure.hpp"
#include "idq/text_index.hpp"

namespace idq {

struct BuildStats {
    Pos n = 0;
    std::size_t classes = 0;
    std::int64_t blocks = 0;  // occurrences summed over classes
    std::size_t fragments = 0;
    std::size_t patterns_distinct = 0;
    std::size_t collapsed = 0;
    std::uint64_t next_segments = 0;
    std::uint64_t end_segments = 0;
    std::uint64_t range_adds = 0;
    std::size_t versioned_nodes = 0;
    std::size_t index_bytes = 0;
};

/*
 * Everything built for one text and dictionary, answering all five queries.
 */
class DictionaryIndex {
public:
    DictionaryIndex(std::string text, const std::vector<Span>& fragments, EngineOptions options = {});

    const TextIndex& text_index() const { return *text_index_; }
    const SubstringStructure& structure() const { return *structure_; }
    const QueryEngine& engine() const { return *engine_; }
    const DistinctEngine& distinct() const { return *distinct_; }

    Pos n() const { return text_index_->n(); }
    const std::string& text() const { return text_index_->text(); }
    std::span<const Span> fragments() const { return engine_->fragments(); }

    bool exists(Pos i, Pos j) const { return engine_->exists(i, j); }
    std::int64_t count(Pos i, Pos j) const { return engine_->count(i, j); }
    std::vector<Occurrence> report(Pos i, Pos j) const { return engine_->report(i, j); }
    std::int64_t count_distinct(Pos i, Pos j) const { return distinct_->count_distinct(i, j); }
    std::vector<PatternId> report_distinct(Pos i, Pos j) const { return distinct_->report_distinct(i, j); }

    BuildStats stats() const;

private:
    std::shared_ptr<const TextIndex> text_index_;
    std::shared_ptr<const SubstringStructure> structure_;
    std::shared_ptr<const QueryEngine> engine_;
    std::unique_ptr<const DistinctEngine> distinct_;
};

}  // namespace idq

#endif  // IDQ_DICTIONARY_INDEX_HPP_
