#include "orbitforms/linalg.hpp"

#include <algorithm>

namespace orbitforms {

std::vector<int> rref(RatMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        Rat inv = 1 / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

std::optional<AffineSolution> solve_affine(const RatMat& a, const RatVec& b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    RatMat aug(rows, RatVec(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        std::copy(a[i].begin(), a[i].end(), aug[i].begin());
        aug[i][cols] = b[i];
    }
    std::vector<int> pivots = rref(aug);
    // inconsistent iff a pivot lands in the augmented column
    if (!pivots.empty() && pivots.back() == static_cast<int>(cols)) return std::nullopt;

    AffineSolution sol;
    sol.particular.assign(cols, 0);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        is_pivot[pivots[i]] = true;
        sol.particular[pivots[i]] = aug[i][cols];
    }
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        sol.free_cols.push_back(static_cast<int>(c));
        RatVec v(cols, 0);
        v[c] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -aug[i][c];
        sol.basis.push_back(std::move(v));
    }
    return sol;
}

std::optional<RatVec> solve_linear(const RatMat& a, const RatVec& b) {
    auto sol = solve_affine(a, b);
    if (!sol) return std::nullopt;
    return sol->particular;
}

std::vector<RatVec> kernel(const RatMat& a) {
    if (a.empty()) return {};
    auto sol = solve_affine(a, RatVec(a.size(), 0));
    return sol->basis;
}

}  // namespace orbitforms
