#pragma once

#include <map>
#include <string>
#include <vector>

#include "orbitforms/numbers.hpp"
#include "orbitforms/orbits.hpp"

namespace orbitforms {

// counts of orbit vectors by inner product k >= 0 with a fixed reference
// vector; k > 0 counts each sign once, k = 0 counted once
struct IntersectionProfile {
    std::map<int, Int> counts;

    bool operator==(const IntersectionProfile&) const = default;
    Int total() const {
        Int t = 0;
        for (const auto& [k, c] : counts) t += (k > 0 ? 2 * c : c);
        return t;
    }
    Int second_moment() const {
        Int m = 0;
        for (const auto& [k, c] : counts) m += (k > 0 ? 2 * c : c) * k * k;
        return m;
    }
};

class IntersectionTable {
  public:
    static IntersectionTable load(const std::string& path, const OrbitRegistry& reg);

    const IntersectionProfile* row(const std::string& orbit, int ref_type) const;
    const std::map<std::pair<std::string, int>, IntersectionProfile>& rows() const { return rows_; }

  private:
    std::map<std::pair<std::string, int>, IntersectionProfile> rows_;
};

}  // namespace orbitforms
