#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "mixquant/closed_form.hpp"
#include "mixquant/measures.hpp"
#include "mixquant/result.hpp"
#include "mixquant/roots.hpp"

namespace mixquant {

// Split of an n-point codebook for the circle+diameter mixture: n1 arc points
// above the axis, n2 below, k interior diameter points, plus the two junction
// points shared by both curves (n = n1 + n2 + k + 2 for n >= 5).
struct AllocationTriple {
    int n1 = 0;
    int n2 = 0;
    int k = 0;
};

// Free Voronoi-boundary parameters: diameter boundary at x = +-a, junction
// arc boundaries at theta = pi - b (upper) and theta = pi + c (lower).
// Degenerate splits pin members instead of solving: k = 0 -> a = 0,
// n1 = 0 -> b = pi/2, n2 = 0 -> c = pi/2.
struct BoundaryParams {
    double a = 0.0;
    double b = kPi / 2.0;
    double c = kPi / 2.0;
};

struct JunctionPoints {
    double r;
    double s;
};

inline AllocationTriple allocation(int n) {
    if (n < 5) throw InvalidArg("allocation: defined for n >= 5 (small n use optimal_set)");
    const int k = (n - 2) / 3;
    const int m = n - k - 2;
    return {(m + 1) / 2, m / 2, k};
}

inline JunctionPoints junction_points(const BoundaryParams& p) {
    const double A = -kPi * p.a + p.b + p.c + kPi;
    return {(-kPi * p.a * p.a + 2.0 * std::sin(p.b) + 2.0 * std::sin(p.c) + kPi) / (2.0 * A),
            (std::cos(p.c) - std::cos(p.b)) / A};
}

// Distortion of the two junction cells ([-1,-a] plus the arc (pi-b, pi+c) for
// the left one, mirrored for the right).
inline double junction_distortion(const BoundaryParams& p) {
    const double a = p.a, b = p.b, c = p.c;
    const double A = -kPi * a + b + c + kPi;
    const double bc = b + c;
    const double num = kPi * kPi * a * a * a * a - 4.0 * kPi * a * a * a * (bc + kPi) +
                       12.0 * kPi * (a * a - 1.0) * (std::sin(b) + std::sin(c)) +
                       6.0 * kPi * kPi * a * a - 12.0 * kPi * a * bc - 4.0 * kPi * kPi * a +
                       12.0 * bc * bc + 16.0 * kPi * bc + 24.0 * std::cos(bc) + kPi * kPi - 24.0;
    return num / (24.0 * kPi * A);
}

// V(n1, n2, k) = a^3/(6k^2) + D_{n1} + D_{n2} + D(a,b,c)
inline double distortion_V(const AllocationTriple& alloc, const BoundaryParams& p) {
    if (p.a < 0.0 || p.a >= 1.0 || p.b <= 0.0 || p.b > kPi / 2.0 + 1e-12 || p.c <= 0.0 ||
        p.c > kPi / 2.0 + 1e-12)
        throw InvalidArg("distortion_V: boundary parameters out of range");
    if (alloc.k == 0 && p.a != 0.0) throw InvalidArg("distortion_V: k = 0 requires a = 0");
    double v = 0.0;
    if (alloc.k >= 1) v += p.a * p.a * p.a / (6.0 * alloc.k * alloc.k);
    if (alloc.n1 >= 1) v += weighted_arc_distortion(p.b, kPi - p.b, alloc.n1, 1.0 / (4.0 * kPi));
    if (alloc.n2 >= 1) v += weighted_arc_distortion(p.c, kPi - p.c, alloc.n2, 1.0 / (4.0 * kPi));
    return v + junction_distortion(p);
}

namespace detail {

// Canonical (equidistance) equations at the three group interfaces; these are
// the stationarity conditions of V in (a, b, c).
inline std::vector<double> canonical_residuals(const AllocationTriple& al, const BoundaryParams& p) {
    const auto [r, s] = junction_points(p);
    std::vector<double> eq;
    if (al.k >= 1) {
        // boundary (-a, 0) between the junction point and -a + a/k
        eq.push_back((r - p.a) * (r - p.a) + s * s - (p.a / al.k) * (p.a / al.k));
    }
    const double rj = 1.0 + r * r + s * s;
    if (al.n1 >= 1) {
        const double w = kPi - 2.0 * p.b;
        const double R = (2.0 * al.n1 / w) * std::sin(w / (2.0 * al.n1));
        const double rho_arc = 1.0 + R * R - 2.0 * R * std::cos(w / (2.0 * al.n1));
        const double rho_jun = rj - 2.0 * r * std::cos(p.b) - 2.0 * s * std::sin(p.b);
        eq.push_back(rho_jun - rho_arc);
    }
    if (al.n2 >= 1) {
        const double w = kPi - 2.0 * p.c;
        const double R = (2.0 * al.n2 / w) * std::sin(w / (2.0 * al.n2));
        const double rho_arc = 1.0 + R * R - 2.0 * R * std::cos(w / (2.0 * al.n2));
        const double rho_jun = rj - 2.0 * r * std::cos(p.c) + 2.0 * s * std::sin(p.c);
        eq.push_back(rho_jun - rho_arc);
    }
    return eq;
}

struct FreeLayout {
    bool has_a = false;
    bool has_b = false;
    bool has_c = false;   // false when pinned or tied to b
    bool c_tied = false;  // symmetric split: c = b
};

inline FreeLayout layout_of(const AllocationTriple& al) {
    FreeLayout L;
    L.has_a = al.k >= 1;
    L.has_b = al.n1 >= 1;
    L.c_tied = al.n1 >= 1 && al.n1 == al.n2;
    L.has_c = al.n2 >= 1 && !L.c_tied;
    return L;
}

inline BoundaryParams unpack(const FreeLayout& L, const std::vector<double>& u) {
    BoundaryParams p;
    std::size_t i = 0;
    p.a = L.has_a ? u[i++] : 0.0;
    p.b = L.has_b ? u[i++] : kPi / 2.0;
    p.c = L.has_c ? u[i++] : (L.c_tied ? p.b : kPi / 2.0);
    return p;
}

// Residual vector in the free coordinates: symmetric splits drop the
// redundant lower-arc equation.
inline std::vector<double> free_residuals(const AllocationTriple& al, const FreeLayout& L,
                                          const std::vector<double>& u) {
    const BoundaryParams p = unpack(L, u);
    const auto eq = canonical_residuals(al, p);
    if (!L.c_tied) return eq;
    std::vector<double> out;
    std::size_t i = 0;
    if (al.k >= 1) out.push_back(eq[i++]);
    out.push_back(eq[i]);  // upper-arc equation; lower is its mirror
    return out;
}

}  // namespace detail

struct BoundarySolution {
    BoundaryParams params;
    double V = 0.0;
    double residual = 0.0;
    bool interior = true;  // false when the box minimum sits on the parameter boundary
};

// Solve the stationarity system for the given split.  Newton from the seed
// family, falling back to coordinate-wise minimization of V (the canonical
// equations are exactly grad V = 0, so the interior minimizer is the root we
// want; this also steps around the spurious a > 1 branch that plain Newton
// can wander to at large k).
inline BoundarySolution solve_allocation(const AllocationTriple& al) {
    using detail::FreeLayout;
    const FreeLayout L = detail::layout_of(al);
    const int dim = static_cast<int>(L.has_a) + static_cast<int>(L.has_b) + static_cast<int>(L.has_c);

    if (dim == 0) {
        BoundaryParams p;  // (0, pi/2, pi/2)
        return {p, distortion_V(al, p), 0.0, true};
    }

    const double eps = 1e-9;
    std::vector<std::pair<double, double>> box;
    if (L.has_a) box.push_back({eps, 1.0 - eps});
    if (L.has_b) box.push_back({eps, kPi / 2.0 - eps});
    if (L.has_c) box.push_back({eps, kPi / 2.0 - eps});

    auto F = [&](const std::vector<double>& u) { return detail::free_residuals(al, L, u); };
    auto Vof = [&](const std::vector<double>& u) { return distortion_V(al, detail::unpack(L, u)); };

    // seed family: the observed small-n fixed point, the large-n asymptote,
    // and a coarse grid
    std::vector<std::vector<double>> seeds;
    auto push_seed = [&](double a0, double b0, double c0) {
        std::vector<double> u;
        if (L.has_a) u.push_back(a0);
        if (L.has_b) u.push_back(b0);
        if (L.has_c) u.push_back(c0);
        seeds.push_back(std::move(u));
    };
    const double a_primary = al.k >= 1 ? static_cast<double>(al.k) / (al.k + 2) : 0.0;
    push_seed(a_primary, 0.8, 0.8);
    push_seed(a_primary, al.n1 >= 1 ? kPi / (2.0 * al.n1 + 2.0) : 0.8,
              al.n2 >= 1 ? kPi / (2.0 * al.n2 + 2.0) : 0.8);
    {
        const double grid[] = {0.2, 0.4, 0.6, 0.8};
        std::vector<double> g(dim, grid[0]);
        std::vector<int> ix(dim, 0);
        for (;;) {
            for (int i = 0; i < dim; ++i) g[i] = grid[ix[i]];
            seeds.push_back(g);
            int i = 0;
            while (i < dim && ++ix[i] == 4) ix[i++] = 0;
            if (i == dim) break;
        }
    }

    std::optional<BoundarySolution> best;
    NewtonOptions nopt;
    nopt.tol = 1e-12;
    for (const auto& s : seeds) {
        const NewtonResult r = newton_solve(F, s, box, nopt);
        if (!r.converged) continue;
        bool on_edge = false;
        for (std::size_t i = 0; i < r.x.size(); ++i)
            if (r.x[i] <= box[i].first + 1e-8 || r.x[i] >= box[i].second - 1e-8) on_edge = true;
        if (on_edge) continue;
        const double V = Vof(r.x);
        if (!best || V < best->V)
            best = BoundarySolution{detail::unpack(L, r.x), V, r.residual, true};
    }
    if (best) return *best;

    // fallback: cyclic golden-section descent on V, then one polish attempt
    std::vector<double> u;
    for (const auto& [lo, hi] : box) u.push_back(0.5 * (lo + hi));
    for (int sweep = 0; sweep < 24; ++sweep) {
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] = golden_min(
                [&](double t) {
                    std::vector<double> v = u;
                    v[i] = t;
                    return Vof(v);
                },
                box[i].first, box[i].second, 1e-13);
        }
    }
    const NewtonResult r = newton_solve(F, u, box, nopt);
    const std::vector<double>& x = r.converged ? r.x : u;
    bool interior = true;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] <= box[i].first + 1e-7 || x[i] >= box[i].second - 1e-7) interior = false;
    double res = 0.0;
    for (double e : F(x)) res = std::max(res, std::fabs(e));
    return {detail::unpack(L, x), Vof(x), res, interior && r.converged};
}

inline BoundaryParams solve_boundaries(const AllocationTriple& al) {
    const BoundarySolution s = solve_allocation(al);
    if (!s.interior || s.residual > 1e-10)
        throw NonConvergence("solve_boundaries: no interior stationary point for split (" +
                                 std::to_string(al.n1) + "," + std::to_string(al.n2) + "," +
                                 std::to_string(al.k) + ")",
                             s.residual);
    return s.params;
}

inline Codebook assemble_codebook(const AllocationTriple& al, const BoundaryParams& p) {
    Codebook pts;
    for (int i = 1; i <= al.k; ++i)
        pts.push_back({-p.a + (2.0 * i - 1.0) * p.a / al.k, 0.0});
    if (al.n1 >= 1)
        for (Point2 q : arc_optimal(p.b, kPi - p.b, al.n1).points) pts.push_back(q);
    if (al.n2 >= 1)
        for (Point2 q : arc_optimal(kPi + p.c, 2.0 * kPi - p.c, al.n2).points) pts.push_back(q);
    const auto [r, s] = junction_points(p);
    pts.push_back({-r, s});
    pts.push_back({r, s});
    canonicalize(pts);
    return pts;
}

inline AllocationTriple small_n_allocation(int n) {
    switch (n) {
        case 2: return {0, 0, 0};
        case 3: return {1, 0, 0};
        case 4: return {1, 1, 0};
        default: throw InvalidArg("small_n_allocation: n must be 2..4");
    }
}

// Optimal set of n-means for the circle+diameter mixture.  The reported error
// comes from the V(n1,n2,k) decomposition and is cross-checked against the
// generic distortion of the assembled codebook.
inline QuantizationResult optimal_set(int n) {
    if (n < 1) throw InvalidArg("optimal_set: n >= 1");
    QuantizationResult out;
    out.model = Model::circle_diameter;
    out.n = n;
    out.method = Method::closed_form;
    out.ambient_dim = 2;
    if (n == 1) {
        out.points = {{0.0, 0.0}};
        out.error = 2.0 / 3.0;
        out.error_exact = Rational(2, 3);
        out.allocation = Allocation{0, 0, 0};
        return out;
    }
    const AllocationTriple al = n <= 4 ? small_n_allocation(n) : allocation(n);
    const BoundarySolution sol = solve_allocation(al);
    if (!sol.interior || sol.residual > 1e-10)
        throw NonConvergence("optimal_set: boundary solve failed for n=" + std::to_string(n),
                             sol.residual);
    out.points = assemble_codebook(al, sol.params);
    out.error = sol.V;
    out.allocation = Allocation{al.k, al.n1, al.n2};

    const double check = distortion(circle_diameter_measure(), out.points);
    if (std::fabs(check - out.error) > 1e-8)
        throw NonConvergence("optimal_set: decomposition and direct distortion disagree",
                             std::fabs(check - out.error));
    return out;
}

// n^2 V_n along n = 3k+2, k = 1..k_max; approaches 3(4+pi^2)/8.
inline std::vector<std::pair<int, double>> coefficient_estimate(int k_max) {
    if (k_max < 1) throw InvalidArg("coefficient_estimate: k_max >= 1");
    std::vector<std::pair<int, double>> rows;
    for (int k = 1; k <= k_max; ++k) {
        const int n = 3 * k + 2;
        const double V = optimal_set(n).error;
        rows.push_back({n, static_cast<double>(n) * n * V});
    }
    return rows;
}

// 2 log n / (-log V_n) along the same subsequence; tends to 1.
inline std::vector<std::pair<int, double>> dimension_estimate(int k_max) {
    if (k_max < 1) throw InvalidArg("dimension_estimate: k_max >= 1");
    std::vector<std::pair<int, double>> rows;
    for (int k = 1; k <= k_max; ++k) {
        const int n = 3 * k + 2;
        const double V = optimal_set(n).error;
        rows.push_back({n, 2.0 * std::log(n) / (-std::log(V))});
    }
    return rows;
}

}  // namespace mixquant
