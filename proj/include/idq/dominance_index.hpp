#ifndef IDQ_DOMINANCE_INDEX_HPP_
#define IDQ_DOMINANCE_INDEX_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "idq/common.hpp"
#include "idq/range_extremum.hpp"

namespace idq {

struct PatternPoint {
    Pos l;
    Pos r;
    PatternId pattern_id;

    friend bool operator==(const PatternPoint&, const PatternPoint&) = default;
};

/*
 * Bit vector with constant-time rank. Every word of bits is stored next to
 * the number of ones before it.
 */
class RankBitVector {
public:
    RankBitVector() = default;
    explicit RankBitVector(std::size_t size);

    void set(std::size_t i) { blocks_[i >> 6].word |= std::uint64_t{1} << (i & 63); }
    // call once after all set() calls
    void seal();
    // number of ones in [0, i)
    std::size_t rank1(std::size_t i) const;
    std::size_t rank0(std::size_t i) const { return i - rank1(i); }
    std::size_t memory_bytes() const;

private:
    struct alignas(16) Block {
        std::uint64_t before = 0;  // ones in earlier words
        std::uint64_t word = 0;
    };

    std::vector<Block> blocks_;
};

/*
 * Wavelet matrix over a sequence of small integers in [0, sigma).
 */
class WaveletMatrix {
public:
    WaveletMatrix() = default;
    WaveletMatrix(std::vector<std::uint32_t> values, std::uint32_t sigma);

    // number of positions i in [lo, hi) with values[i] < bound
    std::size_t count_less(std::size_t lo, std::size_t hi, std::uint32_t bound) const;
    std::size_t memory_bytes() const;

private:
    std::uint32_t sigma_ = 0;
    std::vector<RankBitVector> levels_;
    std::vector<std::size_t> zeros_;
};

/*
 * Static planar point set answering dominance queries: the points p with
 * p.l >= x and p.r <= y. Counting runs in O(log |P|), existence in O(1) and
 * reporting in O(1 + output).
 */
class DominanceIndex {
public:
    DominanceIndex() = default;
    explicit DominanceIndex(std::vector<PatternPoint> points);

    std::size_t size() const { return points_.size(); }

    std::size_t count(Pos x, Pos y) const;
    bool exists(Pos x, Pos y) const;
    std::vector<PatternPoint> report(Pos x, Pos y) const;

    // Visits the dominated points in a deterministic order.
    template <typename Visit>
    void for_each(Pos x, Pos y, Visit&& visit) const {
        std::size_t k = first_at_least(x);
        if (k >= points_.size()) return;
        by_r_.report(k, points_.size() - 1, y, [&](std::size_t i) { visit(points_[i]); });
    }

    std::span<const PatternPoint> points() const { return points_; }
    std::size_t memory_bytes() const;

private:
    // index of the first point (in l order) with l >= x
    std::size_t first_at_least(Pos x) const;

    std::vector<PatternPoint> points_;  // sorted by (l, r, pattern_id)
    Pos x_min_ = 0;
    std::vector<std::uint32_t> first_index_;  // x - x_min_ -> first_at_least(x)
    std::vector<Pos> suffix_min_r_;           // suffix minima of r in l order
    Pos r_min_ = 0;
    std::vector<std::uint32_t> r_rank_;  // y - r_min_ -> distinct r values <= y
    WaveletMatrix r_ranks_;
    RangeExtremum<Pos> by_r_;
};

}  // namespace idq

#endif  // IDQ_DOMINANCE_INDEX_HPP_
