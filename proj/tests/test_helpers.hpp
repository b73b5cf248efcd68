#pragma once

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

#include "mixquant/geometry.hpp"
#include "mixquant/result.hpp"

namespace testutil {

using mixquant::Point2;

// Max pointwise distance between two codebooks under a greedy min-distance
// matching.  Sorting alone is not stable here: mirror-symmetric optimal sets
// carry pairs with equal x up to the last ulp, and tie-breaking on y then
// pairs the wrong points.
inline double codebook_gap(const std::vector<Point2>& a, const std::vector<Point2>& b) {
    if (a.size() != b.size()) return HUGE_VAL;
    const std::size_t n = a.size();
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    pairs.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) pairs.emplace_back(mixquant::rho(a[i], b[j]), i, j);
    std::sort(pairs.begin(), pairs.end());
    std::vector<char> used_a(n, 0), used_b(n, 0);
    double worst = 0.0;
    for (const auto& [d, i, j] : pairs) {
        if (used_a[i] || used_b[j]) continue;
        used_a[i] = used_b[j] = 1;
        worst = std::max(worst, std::sqrt(d));
    }
    return worst;
}

// Same, but also trying the x2-mirror (both planar optimal sets are only
// unique up to reflection about the x1-axis).
inline double codebook_gap_aligned(const std::vector<Point2>& a, std::vector<Point2> b) {
    const double direct = codebook_gap(a, b);
    for (auto& p : b) p.y = -p.y;
    return std::min(direct, codebook_gap(a, b));
}

}  // namespace testutil
