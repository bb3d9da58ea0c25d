#include "idq/dominance_index.hpp"

#include <algorithm>
#include <bit>
#include <tuple>

namespace idq {

RankBitVector::RankBitVector(std::size_t size) : blocks_(size / 64 + 1) {}

void RankBitVector::seal() {
    std::uint64_t ones = 0;
    for (Block& block : blocks_) {
        block.before = ones;
        ones += static_cast<std::uint64_t>(std::popcount(block.word));
    }
}

std::size_t RankBitVector::rank1(std::size_t i) const {
    const Block& block = blocks_[i >> 6];
    std::size_t bits = i & 63;
    std::size_t partial = bits == 0 ? 0 : static_cast<std::size_t>(std::popcount(block.word & ((std::uint64_t{1} << bits) - 1)));
    return block.before + partial;
}

std::size_t RankBitVector::memory_bytes() const { return blocks_.capacity() * sizeof(Block); }

WaveletMatrix::WaveletMatrix(std::vector<std::uint32_t> values, std::uint32_t sigma) : sigma_(sigma) {
    const std::size_t size = values.size();
    std::size_t depth = std::max<std::size_t>(1, std::bit_width(sigma > 0 ? sigma - 1 : 0));
    levels_.reserve(depth);
    zeros_.reserve(depth);
    std::vector<std::uint32_t> next(size);
    for (std::size_t level = 0; level < depth; ++level) {
        std::size_t bit = depth - 1 - level;
        RankBitVector bits(size);
        std::size_t zeros = 0;
        for (std::size_t i = 0; i < size; ++i) {
            if ((values[i] >> bit) & 1) {
                bits.set(i);
            } else {
                ++zeros;
            }
        }
        bits.seal();
        // stable partition: zeros first, then ones
        std::size_t z = 0;
        std::size_t o = zeros;
        for (std::size_t i = 0; i < size; ++i) {
            if ((values[i] >> bit) & 1) {
                next[o++] = values[i];
            } else {
                next[z++] = values[i];
            }
        }
        values.swap(next);
        levels_.push_back(std::move(bits));
        zeros_.push_back(zeros);
    }
}

std::size_t WaveletMatrix::count_less(std::size_t lo, std::size_t hi, std::uint32_t bound) const {
    if (lo >= hi) return 0;
    if (bound >= sigma_) return hi - lo;
    std::size_t result = 0;
    const std::size_t depth = levels_.size();
    for (std::size_t level = 0; level < depth; ++level) {
        std::size_t bit = depth - 1 - level;
        const RankBitVector& bits = levels_[level];
        std::size_t lo0 = bits.rank0(lo);
        std::size_t hi0 = bits.rank0(hi);
        if ((bound >> bit) & 1) {
            result += hi0 - lo0;
            lo = zeros_[level] + (lo - lo0);
            hi = zeros_[level] + (hi - hi0);
        } else {
            lo = lo0;
            hi = hi0;
        }
        if (lo >= hi) break;
    }
    return result;
}

std::size_t WaveletMatrix::memory_bytes() const {
    std::size_t bytes = zeros_.capacity() * sizeof(std::size_t);
    for (const auto& level : levels_) bytes += level.memory_bytes();
    return bytes;
}

DominanceIndex::DominanceIndex(std::vector<PatternPoint> points) : points_(std::move(points)) {
    std::sort(points_.begin(), points_.end(), [](const PatternPoint& a, const PatternPoint& b) {
        return std::tie(a.l, a.r, a.pattern_id) < std::tie(b.l, b.r, b.pattern_id);
    });
    const std::size_t m = points_.size();
    if (m == 0) return;

    x_min_ = points_.front().l;
    const Pos x_max = points_.back().l;
    first_index_.assign(static_cast<std::size_t>(x_max - x_min_) + 1, 0);
    std::size_t k = 0;
    for (Pos x = x_min_; x <= x_max; ++x) {
        while (k < m && points_[k].l < x) ++k;
        first_index_[x - x_min_] = static_cast<std::uint32_t>(k);
    }

    suffix_min_r_.assign(m + 1, kInfinitePos);
    for (std::size_t i = m; i-- > 0;) suffix_min_r_[i] = std::min(suffix_min_r_[i + 1], points_[i].r);

    std::vector<Pos> rs(m);
    for (std::size_t i = 0; i < m; ++i) rs[i] = points_[i].r;
    auto [lowest, highest] = std::minmax_element(rs.begin(), rs.end());
    r_min_ = *lowest;
    r_rank_.assign(static_cast<std::size_t>(*highest - r_min_) + 1, 0);
    for (Pos r : rs) r_rank_[r - r_min_] = 1;
    std::uint32_t distinct = 0;
    for (std::uint32_t& seen : r_rank_) {
        distinct += seen;
        seen = distinct;
    }
    std::vector<std::uint32_t> ranks(m);
    for (std::size_t i = 0; i < m; ++i) ranks[i] = r_rank_[rs[i] - r_min_] - 1;
    r_ranks_ = WaveletMatrix(std::move(ranks), distinct);
    by_r_ = RangeExtremum<Pos>(std::move(rs));
}

std::size_t DominanceIndex::first_at_least(Pos x) const {
    if (points_.empty() || x <= x_min_) return 0;
    std::size_t offset = static_cast<std::size_t>(x - x_min_);
    if (offset >= first_index_.size()) return points_.size();
    return first_index_[offset];
}

std::size_t DominanceIndex::count(Pos x, Pos y) const {
    std::size_t k = first_at_least(x);
    if (k >= points_.size()) return 0;
    if (y < r_min_) return 0;
    std::uint32_t bound = r_rank_[std::min<std::size_t>(static_cast<std::size_t>(y - r_min_), r_rank_.size() - 1)];
    return r_ranks_.count_less(k, points_.size(), bound);
}

bool DominanceIndex::exists(Pos x, Pos y) const {
    std::size_t k = first_at_least(x);
    return k < points_.size() && suffix_min_r_[k] <= y;
}

std::vector<PatternPoint> DominanceIndex::report(Pos x, Pos y) const {
    std::vector<PatternPoint> out;
    for_each(x, y, [&](const PatternPoint& p) { out.push_back(p); });
    return out;
}

std::size_t DominanceIndex::memory_bytes() const {
    return points_.capacity() * sizeof(PatternPoint) + first_index_.capacity() * sizeof(std::uint32_t) +
           suffix_min_r_.capacity() * sizeof(Pos) + r_rank_.capacity() * sizeof(std::uint32_t) +
           r_ranks_.memory_bytes() + by_r_.memory_bytes();
}

}  // namespace idq
