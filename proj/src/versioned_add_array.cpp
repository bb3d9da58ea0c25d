#include "idq/versioned_add_array.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace idq {

VersionedAddArray::VersionedAddArray(Pos size) : size_(size), nodes_(1), leaves_(1), roots_{0} {
    if (size < 1) throw std::invalid_argument("versioned array needs at least one position");
    if (size > kLeafFan) {
        for (top_shift_ = kLeafBits; (std::int64_t{kFan} << top_shift_) < size;) top_shift_ += kFanBits;
    }
}

template <typename T>
std::int32_t VersionedAddArray::fresh(std::vector<T>& pool, std::size_t first_fresh, std::int32_t from) {
    if (from != 0 && static_cast<std::size_t>(from) >= first_fresh) return from;
    pool.push_back(pool[from]);
    return static_cast<std::int32_t>(pool.size() - 1);
}

namespace {

int child_shift(int shift, int fan_bits, int leaf_bits) { return shift == leaf_bits ? 0 : shift - fan_bits; }

}  // namespace

// an inner node covers kFan << shift positions starting at lo, a leaf (shift 0) kLeafFan
std::int32_t VersionedAddArray::add(std::int32_t node, Pos lo, int shift, Pos a, Pos b, std::uint32_t value) {
    if (shift == 0) {
        std::int32_t copy = fresh(leaves_, first_fresh_leaf_, node);
        for (Pos p = std::max(a, lo); p <= std::min<Pos>(b, lo + kLeafFan - 1); ++p) leaves_[copy].add[p - lo] += value;
        return copy;
    }
    std::int32_t copy = fresh(nodes_, first_fresh_node_, node);
    const std::int64_t width = std::int64_t{1} << shift;
    const auto first = static_cast<int>((std::max(a, lo) - std::int64_t{lo}) >> shift);
    const auto last = static_cast<int>(std::min<std::int64_t>(kFan - 1, (std::int64_t{b} - lo) >> shift));
    for (int k = first; k <= last; ++k) {
        std::int64_t child_lo = lo + k * width;
        if (a <= child_lo && child_lo + width - 1 <= b) {
            nodes_[copy].add[k] += value;
        } else {
            std::int32_t c = add(nodes_[copy].child[k], static_cast<Pos>(child_lo), child_shift(shift, kFanBits, kLeafBits),
                                 a, b, value);
            nodes_[copy].child[k] = c;
        }
    }
    return copy;
}

void VersionedAddArray::reserve_for(std::size_t range_adds) {
    // a range addition copies at most two nodes per level
    std::size_t inner_levels = top_shift_ == 0 ? 0 : static_cast<std::size_t>((top_shift_ - kLeafBits) / kFanBits + 1);
    nodes_.reserve(nodes_.size() + range_adds * 2 * inner_levels);
    leaves_.reserve(leaves_.size() + range_adds * 2);
}

void VersionedAddArray::range_add(Pos lo, Pos hi, std::uint32_t value) {
    if (lo < 1 || hi > size_ || lo > hi) {
        throw RangeError("range add [" + std::to_string(lo) + ", " + std::to_string(hi) + "] out of bounds");
    }
    working_root_ = add(working_root_, 1, top_shift_, lo, hi, value);
}

std::size_t VersionedAddArray::commit() {
    roots_.push_back(working_root_);
    first_fresh_node_ = nodes_.size();
    first_fresh_leaf_ = leaves_.size();
    return roots_.size() - 1;
}

std::uint32_t VersionedAddArray::point_query(std::size_t version, Pos pos) const {
    if (version >= roots_.size()) throw LookupError("unknown version " + std::to_string(version));
    if (pos < 1 || pos > size_) throw RangeError("point query at " + std::to_string(pos) + " out of bounds");
    std::uint32_t sum = 0;
    const auto offset = static_cast<std::uint32_t>(pos - 1);
    std::int32_t node = roots_[version];
    int shift = top_shift_;
    for (; shift > 0 && node != 0; shift = child_shift(shift, kFanBits, kLeafBits)) {
        std::uint32_t k = (offset >> shift) & (kFan - 1);
        sum += nodes_[node].add[k];
        node = nodes_[node].child[k];
    }
    if (shift == 0) sum += leaves_[node].add[offset & (kLeafFan - 1)];
    return sum;
}

std::size_t VersionedAddArray::memory_bytes() const {
    return nodes_.size() * sizeof(Node) + leaves_.size() * sizeof(Leaf) + roots_.size() * sizeof(std::int32_t);
}

}  // namespace idq
