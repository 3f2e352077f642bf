#include "markov/interval.hpp"

#include <array>
#include <charconv>

namespace markov {

std::string format_double(double v) {
    if (v == 0) v = 0;  // drop the sign of -0
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

}  // namespace markov
