#include "idq/random_instance.hpp"

#include <algorithm>
#include <stdexcept>

namespace idq {

std::string random_text(std::mt19937_64& rng, Pos n, int alphabet) {
    if (n < 1) throw EmptyTextError();
    if (alphabet < 1 || alphabet > 26) throw std::invalid_argument("alphabet size must be in [1, 26]");
    std::uniform_int_distribution<int> symbol(0, alphabet - 1);
    std::string text(static_cast<std::size_t>(n), 'a');
    for (char& c : text) c = static_cast<char>('a' + symbol(rng));
    return text;
}

DictionaryInput random_instance(std::mt19937_64& rng, const RandomInstanceOptions& options) {
    DictionaryInput input;
    input.text = random_text(rng, options.n, options.alphabet);
    const Pos n = options.n;
    const Pos longest = std::max<Pos>(1, std::min(options.max_fragment_length, n));
    std::uniform_int_distribution<Pos> length(1, longest);
    std::bernoulli_distribution duplicate(options.duplicate_rate);
    input.fragments.reserve(options.fragments);
    for (std::size_t k = 0; k < options.fragments; ++k) {
        if (!input.fragments.empty() && duplicate(rng)) {
            std::uniform_int_distribution<std::size_t> pick(0, input.fragments.size() - 1);
            Span old = input.fragments[pick(rng)];
            std::string_view s = std::string_view(input.text).substr(old.l - 1, old.length());
            // another occurrence if there is one after it, else the same span
            std::size_t p = input.text.find(s, static_cast<std::size_t>(old.l));
            if (p != std::string::npos) old = Span{static_cast<Pos>(p) + 1, static_cast<Pos>(p) + old.length()};
            input.fragments.push_back(old);
            continue;
        }
        Pos len = length(rng);
        std::uniform_int_distribution<Pos> start(1, n - len + 1);
        Pos l = start(rng);
        input.fragments.push_back(Span{l, l + len - 1});
    }
    return input;
}

}  // namespace idq
