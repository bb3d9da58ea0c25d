#ifndef IDQ_VERSIONED_ADD_ARRAY_HPP_
#define IDQ_VERSIONED_ADD_ARRAY_HPP_

#include <cstdint>
#include <vector>

#include "idq/common.hpp"

namespace idq {

/*
 * Persistent array over positions [1, size] supporting range addition and
 * point queries against any committed version.
 *
 * A segment tree with eight children per node and sixteen per leaf. Additions are recorded as
 * per-child annotations on path-copied nodes and never pushed down; a point
 * query sums the annotations along one root-to-leaf path. Nodes created
 * since the last commit are updated in place.
 *
 * Values are kept modulo 2^32, which keeps a node within one cache line.
 */
class VersionedAddArray {
public:
    explicit VersionedAddArray(Pos size);

    // room for this many more range additions without reallocating
    void reserve_for(std::size_t range_adds);
    // adds value to every position in [lo, hi] of the working version
    void range_add(Pos lo, Pos hi, std::uint32_t value);
    // freezes the working version; returns its number (version 0 is all zero)
    std::size_t commit();

    std::uint32_t point_query(std::size_t version, Pos pos) const;

    std::size_t versions() const { return roots_.size(); }
    std::size_t node_count() const { return nodes_.size() + leaves_.size(); }
    std::size_t memory_bytes() const;

private:
    static constexpr int kFanBits = 3;
    static constexpr int kFan = 1 << kFanBits;
    static constexpr int kLeafBits = 4;
    static constexpr int kLeafFan = 1 << kLeafBits;

    struct alignas(8 * kFan) Node {
        std::int32_t child[kFan] = {};
        std::uint32_t add[kFan] = {};  // applies to the whole range of child[k]
    };
    // bottom level, whose children are single positions
    struct alignas(4 * kLeafFan) Leaf {
        std::uint32_t add[kLeafFan] = {};
    };

    template <typename T>
    static std::int32_t fresh(std::vector<T>& pool, std::size_t first_fresh, std::int32_t from);
    std::int32_t add(std::int32_t node, Pos lo, int shift, Pos a, Pos b, std::uint32_t value);

    Pos size_;
    int top_shift_ = 0;  // children of the root cover 2^top_shift_ positions each; 0 if the root is a leaf
    std::vector<Node> nodes_;    // nodes_[0] is the shared all-zero node
    std::vector<Leaf> leaves_;   // and leaves_[0]
    std::vector<std::int32_t> roots_;
    std::int32_t working_root_ = 0;
    // entries at or past these indices belong to the working version
    std::size_t first_fresh_node_ = 1;
    std::size_t first_fresh_leaf_ = 1;
};

}  // namespace idq

#endif  // IDQ_VERSIONED_ADD_ARRAY_HPP_
