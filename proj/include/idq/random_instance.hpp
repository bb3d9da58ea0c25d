#ifndef IDQ_RANDOM_INSTANCE_HPP_
#define IDQ_RANDOM_INSTANCE_HPP_

#include <cstdint>
#include <random>
#include <string>

#include "idq/common.hpp"
#include "idq/io.hpp"

namespace idq {

struct RandomInstanceOptions {
    Pos n = 64;
    int alphabet = 2;            // symbols 'a', 'b', ...
    std::size_t fragments = 0;
    Pos max_fragment_length = 16;
    // chance that a fragment copies the string of an earlier fragment at
    // another occurrence (or simply repeats it)
    double duplicate_rate = 0.0;
};

std::string random_text(std::mt19937_64& rng, Pos n, int alphabet);
DictionaryInput random_instance(std::mt19937_64& rng, const RandomInstanceOptions& options);

}  // namespace idq

#endif  // IDQ_RANDOM_INSTANCE_HPP_
