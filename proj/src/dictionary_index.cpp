#include "idq/dictionary_index.hpp"

namespace idq {

DictionaryIndex::DictionaryIndex(std::string text, const std::vector<Span>& fragments, EngineOptions options)
    : text_index_(std::make_shared<const TextIndex>(std::move(text))),
      structure_(std::make_shared<const SubstringStructure>(text_index_)),
      engine_(std::make_shared<const QueryEngine>(structure_, fragments, options)),
      distinct_(std::make_unique<const DistinctEngine>(engine_)) {}

BuildStats DictionaryIndex::stats() const {
    BuildStats s;
    s.n = n();
    s.classes = structure_->class_count();
    for (const EquivClass& c : structure_->classes()) s.blocks += c.occ;
    s.fragments = engine_->fragment_count();
    s.patterns_distinct = engine_->pattern_count();
    s.collapsed = engine_->collapsed();
    const DistinctStats& d = distinct_->stats();
    s.next_segments = d.next_segments;
    s.end_segments = d.end_segments;
    s.range_adds = d.range_adds;
    s.versioned_nodes = d.versioned_nodes;
    s.index_bytes = text_index_->memory_bytes() + structure_->memory_bytes() + engine_->memory_bytes() +
                    distinct_->memory_bytes();
    return s;
}

}  // namespace idq
