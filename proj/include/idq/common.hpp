#ifndef IDQ_COMMON_HPP_
#define IDQ_COMMON_HPP_

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace idq {

// Text positions are 1-based and spans are inclusive on both ends.
using Pos = std::int32_t;
using NodeId = std::int32_t;
using ClassId = std::int32_t;
using PatternId = std::int32_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr ClassId kNoClass = -1;
inline constexpr PatternId kNoPattern = -1;
inline constexpr Pos kInfinitePos = std::numeric_limits<Pos>::max() / 4;

struct Span {
    Pos l = 0;
    Pos r = 0;

    Pos length() const { return r - l + 1; }

    friend bool operator==(const Span&, const Span&) = default;
    friend auto operator<=>(const Span&, const Span&) = default;
};

class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class EmptyTextError : public std::invalid_argument {
public:
    EmptyTextError() : std::invalid_argument("text must be non-empty") {}
};

class LookupError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// throws RangeError unless 1 <= l <= r <= n
void check_span(Pos l, Pos r, Pos n);

}  // namespace idq

#endif  // IDQ_COMMON_HPP_
