#ifndef IDQ_TESTS_HELPERS_HPP_
#define IDQ_TESTS_HELPERS_HPP_

#include <random>
#include <string>
#include <vector>

#include "idq/common.hpp"
#include "idq/random_instance.hpp"

namespace idq::testing {

inline std::vector<std::string> random_texts(std::uint64_t seed, int count, Pos max_n, int alphabet) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Pos> length(1, max_n);
    std::vector<std::string> texts;
    for (int k = 0; k < count; ++k) texts.push_back(random_text(rng, length(rng), alphabet));
    return texts;
}

// occurrences of T[l, r] anywhere in T
inline Pos brute_occ(const std::string& t, Pos l, Pos r) {
    std::string s = t.substr(l - 1, r - l + 1);
    Pos c = 0;
    for (std::size_t p = 0; p + s.size() <= t.size(); ++p) c += t.compare(p, s.size(), s) == 0;
    return c;
}

}  // namespace idq::testing

#endif  // IDQ_TESTS_HELPERS_HPP_
