#include "orbitforms/golay.hpp"

#include <algorithm>
#include <bit>
#include <fstream>

#include "orbitforms/errors.hpp"

namespace orbitforms {

GolayCode GolayCode::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open golay generator file " + path);
    std::vector<std::uint32_t> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.size() != 24) throw ParseError("golay generator row must have 24 bits: " + line);
        std::uint32_t r = 0;
        for (int i = 0; i < 24; ++i) {
            if (line[i] == '1')
                r |= 1u << i;
            else if (line[i] != '0')
                throw ParseError("golay generator row has a non-binary character: " + line);
        }
        rows.push_back(r);
    }
    if (rows.size() != 12) throw ParseError("golay generator needs exactly 12 rows");

    GolayCode code;
    code.codewords_.reserve(4096);
    for (std::uint32_t m = 0; m < 4096; ++m) {
        std::uint32_t w = 0;
        for (int i = 0; i < 12; ++i)
            if ((m >> i) & 1) w ^= rows[i];
        code.codewords_.push_back(w);
    }
    std::sort(code.codewords_.begin(), code.codewords_.end());
    if (std::adjacent_find(code.codewords_.begin(), code.codewords_.end()) != code.codewords_.end())
        throw ParseError("golay generator rows are not linearly independent");
    code.member_.assign(1u << 24, false);
    for (std::uint32_t w : code.codewords_) code.member_[w] = true;

    auto hist = code.weight_histogram();
    if (hist[0] != 1 || hist[8] != 759 || hist[12] != 2576 || hist[16] != 759 || hist[24] != 1)
        throw ParseError("golay generator does not produce the Golay weight enumerator");
    return code;
}

std::vector<int> GolayCode::weight_histogram() const {
    std::vector<int> hist(25, 0);
    for (std::uint32_t w : codewords_) ++hist[std::popcount(w)];
    return hist;
}

}  // namespace orbitforms
