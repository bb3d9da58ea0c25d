#include <doctest.h>

#include <set>
#include <string>

#include "helpers.hpp"
#include "idq/text_index.hpp"

using namespace idq;

namespace {

// strings held by a node: prefixes (column tree) or suffixes (row tree) of
// its longest string with lengths in (len(parent), len]
std::set<std::string> strings_at(const TextIndex& index, Tree which, NodeId v) {
    const SuffixTree& t = index.tree(which);
    std::set<std::string> out;
    Span s = t.sample(v);
    for (Pos len = t.len(t.parent(v)) + 1; len <= t.len(v); ++len) {
        if (which == Tree::kColumn) {
            out.emplace(index.substr(s.l, s.l + len - 1));
        } else {
            out.emplace(index.substr(s.r - len + 1, s.r));
        }
    }
    return out;
}

std::string symbol_string(std::uint8_t c) { return std::string(1, static_cast<char>(c)); }

}  // namespace

TEST_CASE("column tree of abbab has six nodes and the expected edges") {
    TextIndex index("abbab");
    const SuffixTree& cols = index.column_tree();
    CHECK(cols.size() == 6);
    auto root_kids = cols.children(cols.root());
    REQUIRE(root_kids.size() == 2);
    CHECK(root_kids[0].symbol == 'a');
    CHECK(root_kids[1].symbol == 'b');
    NodeId ab = root_kids[0].node;
    NodeId b = root_kids[1].node;
    CHECK(cols.len(ab) == 2);
    CHECK(cols.len(b) == 1);
    // under "b": "ab" (to bab) and "bab" (to bbab); under "ab": "bab"
    REQUIRE(cols.children(b).size() == 2);
    CHECK(cols.len(cols.children(b)[0].node) == 3);
    CHECK(cols.len(cols.children(b)[1].node) == 4);
    REQUIRE(cols.children(ab).size() == 1);
    CHECK(cols.len(cols.children(ab)[0].node) == 5);
}

TEST_CASE("single symbol text") {
    TextIndex index("a");
    for (Tree which : {Tree::kRow, Tree::kColumn}) {
        const SuffixTree& t = index.tree(which);
        CHECK(t.size() == 2);
        NodeId leaf = t.position_node(1);
        CHECK(t.len(leaf) == 1);
        CHECK(t.parent(leaf) == t.root());
    }
}

TEST_CASE("empty text is rejected") {
    CHECK_THROWS_AS(TextIndex(""), EmptyTextError);
}

TEST_CASE("node lengths count the distinct substrings") {
    TextIndex index("abbab");
    for (Tree which : {Tree::kRow, Tree::kColumn}) {
        const SuffixTree& t = index.tree(which);
        Pos total = 0;
        for (NodeId v = 1; v < static_cast<NodeId>(t.size()); ++v) total += t.len(v) - t.len(t.parent(v));
        // a b ab bb ba abb bba bab abba bbab abbab, plus the empty string at the root
        CHECK(total == 11);
    }
}

TEST_CASE("locate examples on abbab") {
    TextIndex index("abbab");
    NodeId bb = index.locate(Tree::kColumn, 2, 3);
    CHECK(strings_at(index, Tree::kColumn, bb).count("bb") == 1);
    CHECK(index.locate(Tree::kColumn, 1, 5) == index.column_tree().position_node(1));
    NodeId b = index.locate(Tree::kRow, 2, 2);
    CHECK(index.locate(Tree::kRow, 3, 3) == b);
    CHECK(index.locate(Tree::kRow, 5, 5) == b);
    CHECK_THROWS_AS(index.locate(Tree::kRow, 0, 2), RangeError);
    CHECK_THROWS_AS(index.locate(Tree::kRow, 3, 2), RangeError);
    CHECK_THROWS_AS(index.locate(Tree::kColumn, 1, 6), RangeError);
}

TEST_CASE("node_info examples on abbab") {
    TextIndex index("abbab");
    NodeInfo root = index.node_info(Tree::kColumn, 0);
    CHECK(root.len == 0);
    CHECK(root.parent == 0);
    CHECK(root.sample == Span{0, 0});

    // "bb" only occurs once, so it shares a node with bba and bbab
    NodeInfo bb = index.node_info(Tree::kColumn, index.locate(Tree::kColumn, 2, 3));
    CHECK(bb.len == 4);
    CHECK(bb.sample == Span{2, 5});

    NodeInfo b = index.node_info(Tree::kRow, index.locate(Tree::kRow, 2, 2));
    CHECK(b.len == 1);
    CHECK(b.parent == 0);
    CHECK(b.sample == Span{2, 2});

    CHECK_THROWS_AS(index.node_info(Tree::kRow, 99), LookupError);
}

TEST_CASE("tree invariants on random texts") {
    for (int alphabet : {1, 2, 3, 26}) {
        for (const std::string& text : testing::random_texts(7 + alphabet, 40, 40, alphabet)) {
            TextIndex index(text);
            const Pos n = index.n();
            for (Tree which : {Tree::kRow, Tree::kColumn}) {
                const SuffixTree& t = index.tree(which);
                CAPTURE(text);
                CHECK(t.size() <= static_cast<std::size_t>(std::max(2, 2 * n - 1)));
                CHECK(t.len(t.root()) == 0);
                CHECK(t.parent(t.root()) == kNoNode);

                std::set<std::string> all;
                for (NodeId v = 1; v < static_cast<NodeId>(t.size()); ++v) {
                    NodeId p = t.parent(v);
                    CHECK(t.len(v) > t.len(p));
                    Span s = t.sample(v);
                    CHECK(s.length() == t.len(v));
                    CHECK(t.occurrences(v) == testing::brute_occ(text, s.l, s.r));
                    for (const std::string& str : strings_at(index, which, v)) {
                        CHECK(all.insert(str).second);
                        std::size_t first = text.find(str);
                        REQUIRE(first != std::string::npos);
                        auto l = static_cast<Pos>(first) + 1;
                        Pos r = l + static_cast<Pos>(str.size()) - 1;
                        CHECK(index.locate(which, l, r) == v);
                        CHECK(testing::brute_occ(text, l, r) == t.occurrences(v));
                    }
                    // the longest string minus its outer symbol
                    NodeId link = t.suffix_link(v);
                    if (t.len(v) == 1) {
                        CHECK(link == t.root());
                    } else if (which == Tree::kColumn) {
                        CHECK(link == index.locate(which, s.l + 1, s.r));
                    } else {
                        CHECK(link == index.locate(which, s.l, s.r - 1));
                    }
                    // the one symbol seen next to every occurrence, if any
                    std::set<std::string> neighbours;
                    bool touches_end = false;
                    std::string body = text.substr(s.l - 1, s.length());
                    for (std::size_t q = text.find(body); q != std::string::npos; q = text.find(body, q + 1)) {
                        if (which == Tree::kColumn) {
                            if (q == 0) touches_end = true;
                            else neighbours.insert(symbol_string(text[q - 1]));
                        } else {
                            if (q + body.size() == text.size()) touches_end = true;
                            else neighbours.insert(symbol_string(text[q + body.size()]));
                        }
                    }
                    NodeId ext = t.forced_extension(v);
                    if (touches_end || neighbours.size() != 1) {
                        CHECK(ext == kNoNode);
                    } else {
                        std::string longer = which == Tree::kColumn ? *neighbours.begin() + body : body + *neighbours.begin();
                        std::size_t q = text.find(longer);
                        auto l = static_cast<Pos>(q) + 1;
                        CHECK(ext == index.locate(which, l, l + static_cast<Pos>(longer.size()) - 1));
                    }
                }
                CHECK(all.size() == static_cast<std::size_t>([&] {
                          std::set<std::string> distinct;
                          for (Pos l = 1; l <= n; ++l)
                              for (Pos r = l; r <= n; ++r) distinct.emplace(index.substr(l, r));
                          return distinct.size();
                      }()));

                // ancestors of a position's node partition its prefixes / suffixes
                for (Pos p = 1; p <= n; ++p) {
                    NodeId v = t.position_node(p);
                    CHECK(t.len(v) == (which == Tree::kColumn ? n - p + 1 : p));
                    for (Pos len = 1; len <= t.len(v); ++len) {
                        NodeId w = t.weighted_ancestor(v, len);
                        CHECK(t.len(t.parent(w)) < len);
                        CHECK(len <= t.len(w));
                    }
                }
            }
        }
    }
}

TEST_CASE("by_length lists parents first") {
    TextIndex index("mississippi");
    for (Tree which : {Tree::kRow, Tree::kColumn}) {
        const SuffixTree& t = index.tree(which);
        std::vector<bool> seen(t.size(), false);
        for (NodeId v : t.by_length()) {
            if (v != t.root()) CHECK(seen[t.parent(v)]);
            seen[v] = true;
        }
    }
}
