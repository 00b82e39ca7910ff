#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace orbitforms {

// Extended binary Golay code as 4096 bitmasks of width 24.
class GolayCode {
  public:
    static GolayCode load(const std::string& path);

    const std::vector<std::uint32_t>& codewords() const { return codewords_; }
    bool contains(std::uint32_t mask) const { return member_[mask]; }
    // weight -> count; nonzero at 0, 8, 12, 16, 24 only
    std::vector<int> weight_histogram() const;

  private:
    std::vector<std::uint32_t> codewords_;   // sorted
    std::vector<bool> member_;               // 2^24 bits
};

}  // namespace orbitforms
