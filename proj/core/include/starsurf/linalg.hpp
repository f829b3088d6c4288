#pragma once

// Small dense exact linear algebra over Q (field elimination). The heavy
// integer elimination for implicitization lives in implicit.cpp; this is for
// the small systems (plane fitting, kernel back-substitution helpers).

#include <vector>

#include "starsurf/scalar.hpp"

namespace starsurf {

using RatMatrix = std::vector<std::vector<Rat>>;

// Reduced row echelon form in place; returns pivot column indices.
inline std::vector<int> rref(RatMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        Rat lead = m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] /= lead;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Basis of the right nullspace of m.
inline RatMatrix nullspace(RatMatrix m) {
    if (m.empty()) return {};
    int cols = static_cast<int>(m[0].size());
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    RatMatrix basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[f] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace starsurf
