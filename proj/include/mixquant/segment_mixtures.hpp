#pragma once

#include <cmath>
#include <mutex>
#include <optional>
#include <vector>

#include "mixquant/closed_form.hpp"
#include "mixquant/measures.hpp"
#include "mixquant/rational.hpp"
#include "mixquant/result.hpp"
#include "mixquant/roots.hpp"

namespace mixquant {

enum class SegmentModel { disconnected, connected };

// ---------------------------------------------------------------------------
// disconnected model: P = 3/4 U[0,1/2] + 1/4 U[3/4,1]

// H(n,k) = 1/n^3 - sum_{i=k}^inf 1/(i+1)^4, the tail written via zeta(4).
inline double disconnected_H(int n, int k) {
    if (n < 2 || k < 1) throw InvalidArg("disconnected_H: need n >= 2, k >= 1");
    constexpr double zeta4 = 1.0823232337111381915;  // pi^4 / 90
    double partial = 0.0;
    for (int m = 1; m <= k; ++m) partial += 1.0 / (static_cast<double>(m) * m * m * m);
    return 1.0 / (static_cast<double>(n) * n * n) - (zeta4 - partial);
}

// a(n) = min{k : H(n,k) > 0}, scanned from floor(2n/3) with an incremental tail.
inline int alloc_disconnected(int n) {
    if (n < 2) throw InvalidArg("alloc_disconnected: n >= 2");
    constexpr double zeta4 = 1.0823232337111381915;
    int k = std::max(1, (2 * n) / 3);
    double partial = 0.0;
    for (int m = 1; m <= k; ++m) partial += 1.0 / (static_cast<double>(m) * m * m * m);
    const double lhs = 1.0 / (static_cast<double>(n) * n * n);
    auto H_pos = [&]() { return lhs > zeta4 - partial; };
    if (H_pos()) {
        while (k > 1) {
            partial -= 1.0 / (static_cast<double>(k) * k * k * k);
            --k;
            if (!(lhs > zeta4 - partial)) { ++k; break; }
        }
        return k;
    }
    while (!H_pos()) {
        ++k;
        partial += 1.0 / (static_cast<double>(k) * k * k * k);
    }
    return k;
}

// 3/4 V_k(U[0,1/2]) + 1/4 V_{n-k}(U[3/4,1]) = 1/(64 k^2) + 1/(768 (n-k)^2)
inline Rational disconnected_split_error(int n, int k) {
    if (k < 1 || k > n - 1) throw InvalidArg("disconnected_split_error: need 1 <= k <= n-1");
    const std::int64_t kk = k, mm = n - k;
    return Rational(1, 64 * kk * kk) + Rational(1, 768 * mm * mm);
}

// ---------------------------------------------------------------------------
// connected model: P = 3/4 U[0,1/2] + 1/4 U[1/2,1] (density 3/2 then 1/2)

inline int connected_rule_allocation(int n) {  // floor(5(n+1)/8)
    if (n < 1) throw InvalidArg("connected_rule_allocation: n >= 1");
    return (5 * (n + 1)) / 8;
}

// Solved centroid system for a k | m = n-k split.  The interior conditions
// force a_j = (2j-1) a_1 and an arithmetic b-chain whose spacing d satisfies
// b_1 = a_k + d and 2 b_1 + (2m-1) d = 2, leaving the straddle-cell centroid
// condition on a_k as one scalar equation in a_1.
struct ConnectedSolution {
    std::vector<double> a;  // points in J1, increasing
    std::vector<double> b;  // points in J2, increasing
    int k = 0;
    int m = 0;
    double error = 0.0;     // direct piecewise distortion
};

namespace detail {

// exact distortion of a sorted codebook under the 3/2 | 1/2 density
inline double connected_points_distortion(const std::vector<double>& pts) {
    auto seg = [](double l, double h, double d, double p) {
        if (h <= l) return 0.0;
        const double A = l - p, B = h - p;
        return d * (B * B * B - A * A * A) / 3.0;
    };
    double V = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double lo = i == 0 ? 0.0 : 0.5 * (pts[i - 1] + pts[i]);
        const double hi = i + 1 == pts.size() ? 1.0 : 0.5 * (pts[i] + pts[i + 1]);
        V += seg(std::max(lo, 0.0), std::min(hi, 0.5), 1.5, pts[i]);
        V += seg(std::max(lo, 0.5), std::min(hi, 1.0), 0.5, pts[i]);
    }
    return V;
}

}  // namespace detail

// Solve the split with k points in J1.  Returns nothing when the centroid
// system has no admissible root (no such stationary configuration exists);
// the junction side condition 1/2 <= (a_k + b_1)/2 is required for validity.
inline std::optional<ConnectedSolution> solve_connected_split(int n, int k) {
    const int m = n - k;
    if (k < 1 || m < 1) return std::nullopt;

    auto geom = [&](double a1, double& ak, double& d, double& b1) {
        ak = (2.0 * k - 1.0) * a1;
        d = 2.0 * (1.0 - ak) / (2.0 * m + 1.0);
        b1 = ak + d;
    };
    auto f = [&](double a1) {
        double ak, d, b1;
        geom(a1, ak, d, b1);
        const double L = k >= 2 ? ak - a1 : 0.0;
        const double R = 0.5 * (ak + b1);
        const double mass = 1.5 * (0.5 - L) + 0.5 * (R - 0.5);
        const double mom = 0.75 * (0.25 - L * L) + 0.25 * (R * R - 0.25);
        return mom - ak * mass;
    };

    const double a_hi = 1.0 / (2.0 * (2.0 * k - 1.0));  // keeps a_k < 1/2
    std::optional<ConnectedSolution> best;
    for (double a1 : find_roots_scan(f, 1e-12, a_hi - 1e-12, 256, 1e-16)) {
        double ak, d, b1;
        geom(a1, ak, d, b1);
        if (0.5 * (ak + b1) < 0.5 - 1e-12) continue;  // side condition
        if (b1 < 0.5 - 1e-12 || d <= 0.0) continue;
        ConnectedSolution sol;
        sol.k = k;
        sol.m = m;
        for (int j = 1; j <= k; ++j) sol.a.push_back((2.0 * j - 1.0) * a1);
        for (int j = 1; j <= m; ++j) sol.b.push_back(b1 + (j - 1.0) * d);
        std::vector<double> pts = sol.a;
        pts.insert(pts.end(), sol.b.begin(), sol.b.end());
        sol.error = detail::connected_points_distortion(pts);
        if (!best || sol.error < best->error) best = std::move(sol);
    }
    return best;
}

// The closed polynomial for V_n in terms of a_1, a_2, a_{k-1}, a_k, b_1, b_2
// (needs k >= 2 and m >= 2; smaller splits are integrated directly).
inline double connected_error_polynomial(const ConnectedSolution& s) {
    if (s.k < 2 || s.m < 2)
        throw InvalidArg("connected_error_polynomial: needs k >= 2 and m >= 2");
    const double a1 = s.a[0], a2 = s.a[1], akm1 = s.a[s.k - 2], ak = s.a[s.k - 1];
    const double b1 = s.b[0], b2 = s.b[1];
    const double m = s.m, k = s.k;
    return (1.0 / 48.0) *
           (-3.0 * b1 * b1 * m * ak + 3.0 * b1 * m * ak * ak - 3.0 * b1 * b1 * ak +
            3.0 * b1 * ak * ak - m * ak * ak * ak + 21.0 * a1 * a1 * a1 * (k - 1.0) +
            9.0 * a2 * a1 * a1 * (k - 1.0) - 9.0 * a2 * a2 * a1 * (k - 1.0) +
            3.0 * a2 * a2 * a2 * (k - 1.0) - 3.0 * akm1 * akm1 * akm1 - 14.0 * ak * ak * ak -
            9.0 * akm1 * ak * ak + 24.0 * ak * ak + 9.0 * akm1 * akm1 * ak - 12.0 * ak +
            b2 * b2 * b2 * m - 3.0 * b1 * b2 * b2 * m + 3.0 * b1 * b1 * b2 * m + b1 * b1 * b1 +
            2.0);
}

// ---------------------------------------------------------------------------
// allocation search shared by both models

// The improve-while-better scan over V(k, n-k).  Splits with no admissible
// stationary configuration count as +infinity.  Note this is the true argmin
// of the split error; it does NOT always match the closed-form sequences
// (first divergences: disconnected n=18, connected n=7), which the tests
// flag explicitly.
inline int local_search_alloc(int n, SegmentModel model) {
    if (n < 2) throw InvalidArg("local_search_alloc: n >= 2");
    if (model == SegmentModel::disconnected) {
        auto V = [&](int k) { return disconnected_split_error(n, k); };
        int k = std::min(std::max((2 * n) / 3, 1), n - 1);
        for (;;) {
            if (k - 1 >= 1 && V(k - 1) < V(k)) { --k; continue; }
            if (k + 1 <= n - 1 && V(k + 1) < V(k)) { ++k; continue; }
            return k;
        }
    }
    // connected: start from the previous n's allocation following the
    // induction, walking the chain up from n = 2.  The chain is memoized so
    // that sweeping a table over n costs O(n) solves in total.
    auto V = [](int nn, int k) -> std::optional<double> {
        const auto sol = solve_connected_split(nn, k);
        if (!sol) return std::nullopt;
        return sol->error;
    };
    auto better = [](const std::optional<double>& x, const std::optional<double>& y) {
        return x && (!y || *x < *y);
    };
    static std::mutex memo_mutex;
    static std::vector<int> memo = {0, 0, 1};  // memo[n], entries below n=2 unused
    std::lock_guard<std::mutex> lock(memo_mutex);
    int k = memo.back();
    for (int nn = static_cast<int>(memo.size()); nn <= n; ++nn) {
        for (;;) {
            const auto Vk = V(nn, k);
            if (k - 1 >= 1 && better(V(nn, k - 1), Vk)) { --k; continue; }
            if (k + 1 <= nn - 1 && better(V(nn, k + 1), Vk)) { ++k; continue; }
            if (!Vk && k + 1 <= nn - 1 && V(nn, k + 1)) { ++k; continue; }
            if (!Vk && k - 1 >= 1 && V(nn, k - 1)) { --k; continue; }
            break;
        }
        memo.push_back(k);
    }
    return memo[n];
}

// ---------------------------------------------------------------------------
// optimal sets

inline QuantizationResult optimal_set_disconnected(int n) {
    if (n < 1) throw InvalidArg("optimal_set_disconnected: n >= 1");
    QuantizationResult out;
    out.model = Model::disconnected;
    out.n = n;
    out.method = Method::closed_form;
    out.ambient_dim = 1;
    if (n == 1) {
        out.points = {{13.0 / 32.0, 0.0}};
        out.error_exact = Rational(277, 3072);
        out.error = out.error_exact->to_double();
        out.allocation.emplace();
        out.allocation->k = 1;
        return out;
    }
    const int k = local_search_alloc(n, SegmentModel::disconnected);
    for (Point2 p : interval_optimal(0.0, 0.5, k).points) out.points.push_back(p);
    for (Point2 p : interval_optimal(0.75, 1.0, n - k).points) out.points.push_back(p);
    canonicalize(out.points);
    out.error_exact = disconnected_split_error(n, k);
    out.error = out.error_exact->to_double();
    out.allocation.emplace();
    out.allocation->k = k;
    return out;
}

inline QuantizationResult optimal_set_connected(int n) {
    if (n < 1) throw InvalidArg("optimal_set_connected: n >= 1");
    QuantizationResult out;
    out.model = Model::connected;
    out.n = n;
    out.method = Method::closed_form;
    out.ambient_dim = 1;
    if (n == 1) {
        out.points = {{3.0 / 8.0, 0.0}};
        out.error_exact = Rational(13, 192);
        out.error = out.error_exact->to_double();
        out.allocation.emplace();
        out.allocation->k = 1;
        return out;
    }
    const int k = local_search_alloc(n, SegmentModel::connected);
    const auto sol = solve_connected_split(n, k);
    if (!sol)
        throw NoRealSolution("optimal_set_connected: admissible branch absent for n=" +
                             std::to_string(n));
    for (double x : sol->a) out.points.push_back({x, 0.0});
    for (double x : sol->b) out.points.push_back({x, 0.0});
    out.error = (sol->k >= 2 && sol->m >= 2) ? connected_error_polynomial(*sol) : sol->error;
    out.allocation.emplace();
    out.allocation->k = k;
    if (n == 2) out.error_exact = Rational(1, 48);  // {1/4, 3/4}
    const double check = distortion(connected_measure(), out.points);
    if (std::fabs(check - out.error) > 1e-10)
        throw NonConvergence("optimal_set_connected: polynomial and direct distortion disagree",
                             std::fabs(check - out.error));
    return out;
}

// ---------------------------------------------------------------------------
// structural checks

struct StructuralReport {
    struct Item {
        std::string name;
        bool ok;
    };
    std::vector<Item> items;
    bool all_ok() const {
        for (const auto& it : items)
            if (!it.ok) return false;
        return true;
    }
};

inline StructuralReport structural_checks(SegmentModel model, const QuantizationResult& res,
                                          bool throw_on_failure = true) {
    if (res.n < 2) throw InvalidArg("structural_checks: n >= 2");
    StructuralReport rep;
    auto add = [&](std::string name, bool ok) {
        rep.items.push_back({name, ok});
        if (!ok && throw_on_failure) throw AssertionFailure("structural check failed: " + name);
    };
    std::vector<double> xs;
    for (Point2 p : res.points) xs.push_back(p.x);
    bool increasing = true;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (!(xs[i] < xs[i + 1])) increasing = false;
    add("points strictly increasing", increasing);

    if (model == SegmentModel::disconnected) {
        bool in_gap = false;
        for (double x : xs)
            if (x > 0.5 + 1e-12 && x < 0.75 - 1e-12) in_gap = true;
        add("no point inside the gap (1/2, 3/4)", !in_gap);
        int k = 0;
        for (double x : xs)
            if (x <= 0.5 + 1e-12) ++k;
        add("both segments populated", k >= 1 && k <= res.n - 1);
        if (k >= 1 && k <= res.n - 1) {
            const double mid = 0.5 * (xs[k - 1] + xs[k]);
            add("gap boundary midpoint stays inside [1/2, 3/4]",
                mid >= 0.5 - 1e-12 && mid <= 0.75 + 1e-12);
        }
    } else {
        int k = 0;
        for (double x : xs)
            if (x < 0.5) ++k;
        add("both intervals populated", k >= 1 && k <= res.n - 1);
        if (k >= 1 && k <= res.n - 1)
            add("junction side condition 1/2 <= (a_k + b_1)/2",
                0.5 * (xs[k - 1] + xs[k]) >= 0.5 - 1e-12);
    }
    return rep;
}

inline StructuralReport structural_checks(SegmentModel model, int n, bool throw_on_failure = true) {
    return structural_checks(model,
                             model == SegmentModel::disconnected ? optimal_set_disconnected(n)
                                                                 : optimal_set_connected(n),
                             throw_on_failure);
}

}  // namespace mixquant
