#ifndef IDQ_RANGE_EXTREMUM_HPP_
#define IDQ_RANGE_EXTREMUM_HPP_

#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace idq {

/*
 * Sparse table over a static array giving the position of the extremum of
 * any index range in O(1). With Better = std::less the extremum is the
 * minimum, with std::greater the maximum. Ties go to the leftmost index.
 */
template <typename T, typename Better = std::less<T>>
class RangeExtremum {
public:
    RangeExtremum() = default;

    explicit RangeExtremum(std::vector<T> values) : values_(std::move(values)) {
        const std::size_t size = values_.size();
        if (size == 0) return;
        table_.emplace_back(size);
        for (std::size_t i = 0; i < size; ++i) table_[0][i] = static_cast<std::uint32_t>(i);
        for (std::size_t width = 2; width <= size; width *= 2) {
            const auto& prev = table_.back();
            std::vector<std::uint32_t> cur(size - width + 1);
            for (std::size_t i = 0; i < cur.size(); ++i) {
                cur[i] = pick(prev[i], prev[i + width / 2]);
            }
            table_.push_back(std::move(cur));
        }
    }

    std::size_t size() const { return values_.size(); }
    const T& operator[](std::size_t i) const { return values_[i]; }
    std::span<const T> values() const { return values_; }

    // index of the extremum in [lo, hi]; requires lo <= hi < size()
    std::size_t arg(std::size_t lo, std::size_t hi) const {
        std::size_t level = std::bit_width(hi - lo + 1) - 1;
        return pick(table_[level][lo], table_[level][hi + 1 - (std::size_t{1} << level)]);
    }

    // Calls visit(i) for every i in [lo, hi] whose value is at least as good
    // as threshold (values[i] <= threshold for a minimum table, >= for a
    // maximum table). O(1 + reported).
    template <typename Visit>
    void report(std::size_t lo, std::size_t hi, const T& threshold, Visit&& visit) const {
        if (lo > hi || hi >= values_.size()) return;
        std::vector<std::pair<std::size_t, std::size_t>> pending;
        pending.emplace_back(lo, hi);
        while (!pending.empty()) {
            auto [a, b] = pending.back();
            pending.pop_back();
            std::size_t m = arg(a, b);
            if (Better{}(threshold, values_[m])) continue;
            visit(m);
            if (m > a) pending.emplace_back(a, m - 1);
            if (m < b) pending.emplace_back(m + 1, b);
        }
    }

    std::size_t memory_bytes() const {
        std::size_t bytes = values_.capacity() * sizeof(T);
        for (const auto& level : table_) bytes += level.capacity() * sizeof(std::uint32_t);
        return bytes;
    }

private:
    std::uint32_t pick(std::uint32_t a, std::uint32_t b) const {
        return Better{}(values_[b], values_[a]) ? b : a;
    }

    std::vector<T> values_;
    std::vector<std::vector<std::uint32_t>> table_;
};

}  // namespace idq

#endif  // IDQ_RANGE_EXTREMUM_HPP_
