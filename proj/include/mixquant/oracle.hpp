#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "mixquant/measures.hpp"
#include "mixquant/result.hpp"

namespace mixquant {

struct LloydConfig {
    int restarts = 32;
    int max_iters = 500;
    double tol = 1e-10;  // sup-norm codebook movement
    std::uint64_t seed = 0;
};

namespace detail {

inline Point2 sample_point(const MixedMeasure& m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = unit(rng);
    for (const auto& c : m.components()) {
        if (u <= c.weight || &c == &m.components().back()) {
            const auto [lo, hi] = c.param_range();
            return c.at(lo + unit(rng) * (hi - lo));
        }
        u -= c.weight;
    }
    return {0.0, 0.0};
}

inline bool has_duplicates(const Codebook& cb) {
    for (std::size_t i = 0; i < cb.size(); ++i)
        for (std::size_t j = i + 1; j < cb.size(); ++j)
            if (rho(cb[i], cb[j]) < 1e-24) return true;
    return false;
}

// collided centroids break the Voronoi partition; kick the later twin to a
// fresh sample
inline void reseed_duplicates(Codebook& cb, const MixedMeasure& m, std::mt19937_64& rng) {
    for (std::size_t i = 0; i < cb.size(); ++i)
        for (std::size_t j = i + 1; j < cb.size(); ++j)
            if (rho(cb[i], cb[j]) < 1e-24) cb[j] = sample_point(m, rng);
}

}  // namespace detail

// Lloyd fixed-point iteration: alternate Voronoi partition and cell centroids
// from codebooks sampled i.i.d. from the measure, keep the best restart.
// Empty cells are re-seeded at a fresh measure sample.  `trace`, when given,
// records the distortion after every centroid update of the best restart.
inline QuantizationResult lloyd(const MixedMeasure& m, int n, const LloydConfig& cfg, Model model,
                                std::vector<double>* trace = nullptr) {
    if (n < 1) throw InvalidArg("lloyd: n >= 1");
    if (cfg.restarts < 1 || !(cfg.tol > 0.0)) throw InvalidArg("lloyd: bad config");
    std::mt19937_64 rng(cfg.seed);
    const SupportSamples samples(m);

    Codebook best;
    double best_err = HUGE_VAL;
    std::vector<double> best_trace;

    for (int restart = 0; restart < cfg.restarts; ++restart) {
        Codebook cb;
        do {
            cb.clear();
            for (int i = 0; i < n; ++i) cb.push_back(detail::sample_point(m, rng));
        } while (detail::has_duplicates(cb));

        std::vector<double> run_trace;
        for (int iter = 0; iter < cfg.max_iters; ++iter) {
            const auto cells = partition(m, cb, &samples);
            double moved = 0.0;
            for (std::size_t j = 0; j < cb.size(); ++j) {
                const auto [centroid, mass] = cell_centroid(m, cells[j]);
                if (mass <= 0.0) {
                    cb[j] = detail::sample_point(m, rng);
                    moved = HUGE_VAL;
                    continue;
                }
                moved = std::max(moved, std::max(std::fabs(centroid.x - cb[j].x),
                                                 std::fabs(centroid.y - cb[j].y)));
                cb[j] = centroid;
            }
            if (detail::has_duplicates(cb)) detail::reseed_duplicates(cb, m, rng);
            if (trace) run_trace.push_back(distortion(m, cb));
            if (moved < cfg.tol) break;
        }
        const double err = distortion(m, cb);
        if (err < best_err) {
            best_err = err;
            best = cb;
            best_trace = std::move(run_trace);
        }
    }
    if (trace) *trace = std::move(best_trace);

    QuantizationResult out;
    out.model = model;
    out.n = n;
    out.method = Method::lloyd;
    out.ambient_dim = m.ambient_dim();
    canonicalize(best);
    out.points = std::move(best);
    out.error = best_err;
    return out;
}

// ---------------------------------------------------------------------------
// brute force

namespace detail {

struct Atom {
    double x, y, w;
};

inline std::vector<Atom> component_atoms(const Component& c, int grid) {
    std::vector<Atom> atoms;
    const auto [lo, hi] = c.param_range();
    for (int i = 0; i < grid; ++i) {
        const Point2 p = c.at(lo + (hi - lo) * (i + 0.5) / grid);
        atoms.push_back({p.x, p.y, c.weight / grid});
    }
    return atoms;
}

// exact DP over contiguous splits of sorted weighted atoms (1-D k-means)
inline std::vector<double> dp_1d_centroids(const std::vector<Atom>& atoms, int n) {
    const int G = static_cast<int>(atoms.size());
    std::vector<double> W(G + 1, 0.0), WX(G + 1, 0.0), WX2(G + 1, 0.0);
    for (int i = 0; i < G; ++i) {
        W[i + 1] = W[i] + atoms[i].w;
        WX[i + 1] = WX[i] + atoms[i].w * atoms[i].x;
        WX2[i + 1] = WX2[i] + atoms[i].w * atoms[i].x * atoms[i].x;
    }
    auto cost = [&](int i, int j) {  // atoms [i, j)
        const double w = W[j] - W[i];
        if (w <= 0.0) return 0.0;
        const double s = WX[j] - WX[i];
        return (WX2[j] - WX2[i]) - s * s / w;
    };
    const double INF = HUGE_VAL;
    std::vector<std::vector<double>> D(n + 1, std::vector<double>(G + 1, INF));
    std::vector<std::vector<int>> back(n + 1, std::vector<int>(G + 1, 0));
    D[0][0] = 0.0;
    for (int c = 1; c <= n; ++c) {
        for (int j = c; j <= G; ++j) {
            double bestv = INF;
            int besti = c - 1;
            for (int i = c - 1; i < j; ++i) {
                const double v = D[c - 1][i] + cost(i, j);
                if (v < bestv) { bestv = v; besti = i; }
            }
            D[c][j] = bestv;
            back[c][j] = besti;
        }
    }
    std::vector<double> centroids;
    int j = G;
    for (int c = n; c >= 1; --c) {
        const int i = back[c][j];
        centroids.push_back((WX[j] - WX[i]) / (W[j] - W[i]));
        j = i;
    }
    std::sort(centroids.begin(), centroids.end());
    return centroids;
}

// --- 2-D: exhaustive search over Voronoi-consistent contiguous splits -------
//
// Each cluster of an optimal codebook meets the segment in at most one
// interval (cells are convex) and, for the configurations at stake here, the
// circle in at most one arc.  A candidate is therefore a cyclic split of the
// circle into r arcs, a split of the segment into s intervals, and a pairing
// of j = r + s - n of them into shared clusters.  Cut positions are scanned
// on a coarse grid and polished by coordinate descent on the atom grid.

struct PrefixSums {
    std::vector<double> w, x, y, q;  // q = w * |p|^2
    void build(const std::vector<Atom>& atoms, int repeat) {
        const int G = static_cast<int>(atoms.size());
        w.assign(repeat * G + 1, 0.0);
        x = y = q = w;
        for (int i = 0; i < repeat * G; ++i) {
            const Atom& a = atoms[i % G];
            w[i + 1] = w[i] + a.w;
            x[i + 1] = x[i] + a.w * a.x;
            y[i + 1] = y[i] + a.w * a.y;
            q[i + 1] = q[i] + a.w * (a.x * a.x + a.y * a.y);
        }
    }
};

struct PieceSum {
    double w = 0.0, x = 0.0, y = 0.0, q = 0.0;
    void add(const PrefixSums& ps, int i, int j) {
        w += ps.w[j] - ps.w[i];
        x += ps.x[j] - ps.x[i];
        y += ps.y[j] - ps.y[i];
        q += ps.q[j] - ps.q[i];
    }
    double inertia() const { return w > 0.0 ? q - (x * x + y * y) / w : 0.0; }
    Point2 centroid() const { return {x / w, y / w}; }
};

struct Shape {
    int r = 0;                    // circle arcs
    int s = 0;                    // segment intervals
    std::vector<int> arc_mate;    // arc i -> interval index or -1
};

inline std::vector<Shape> shapes_for(int n) {
    std::vector<Shape> out;
    // both curves carry mass, so each is covered by at least one piece
    for (int r = 1; r <= n; ++r) {
        for (int s = 1; s <= n; ++s) {
            const int j = r + s - n;
            if (j < 0 || j > std::min(r, s)) continue;
            // choose j arcs, j intervals, and a bijection
            std::vector<int> arcs(r);
            for (int i = 0; i < r; ++i) arcs[i] = i;
            std::vector<bool> pick(r, false);
            std::fill(pick.end() - j, pick.end(), true);
            // iterate subsets of arcs of size j via permutation trick
            std::sort(pick.begin(), pick.end());
            do {
                std::vector<int> chosen;
                for (int i = 0; i < r; ++i)
                    if (pick[i]) chosen.push_back(i);
                std::vector<bool> ipick(s, false);
                std::fill(ipick.end() - j, ipick.end(), true);
                std::sort(ipick.begin(), ipick.end());
                do {
                    std::vector<int> ichosen;
                    for (int i = 0; i < s; ++i)
                        if (ipick[i]) ichosen.push_back(i);
                    std::vector<int> perm(ichosen);
                    std::sort(perm.begin(), perm.end());
                    do {
                        Shape sh{r, s, std::vector<int>(r, -1)};
                        for (int t = 0; t < j; ++t) sh.arc_mate[chosen[t]] = perm[t];
                        out.push_back(sh);
                    } while (std::next_permutation(perm.begin(), perm.end()));
                } while (std::next_permutation(ipick.begin(), ipick.end()));
            } while (std::next_permutation(pick.begin(), pick.end()));
        }
    }
    return out;
}

struct SplitCandidate {
    std::vector<int> ccut;  // r circle cut atom indices (first < others, cyclic)
    std::vector<int> scut;  // s-1 interior segment cut indices
    double cost = HUGE_VAL;
};

inline double eval_split(const Shape& sh, const PrefixSums& circ, int Gc, const PrefixSums& seg,
                         int Gs, const std::vector<int>& ccut, const std::vector<int>& scut) {
    double total = 0.0;
    std::vector<PieceSum> shared(sh.s);
    for (int i = 0; i < sh.r; ++i) {
        const int a = ccut[i];
        const int b = (i + 1 < sh.r) ? ccut[i + 1] : ccut[0] + Gc;
        PieceSum ps;
        ps.add(circ, a, b);
        if (sh.arc_mate[i] < 0)
            total += ps.inertia();
        else
            shared[sh.arc_mate[i]] = ps;
    }
    std::vector<int> sedges;
    sedges.push_back(0);
    for (int c : scut) sedges.push_back(c);
    sedges.push_back(Gs);
    for (int i = 0; i < sh.s; ++i) {
        PieceSum ps;
        bool is_shared = false;
        for (int a = 0; a < sh.r; ++a)
            if (sh.arc_mate[a] == i) is_shared = true;
        if (is_shared) ps = shared[i];
        ps.add(seg, sedges[i], sedges[i + 1]);
        total += ps.inertia();
    }
    return total;
}

}  // namespace detail

// Exhaustive (grid-resolution) optimal quantizer for n <= 3.  1-D measures
// use exact dynamic programming over contiguous splits of equal-mass atoms;
// the planar model enumerates Voronoi-consistent contiguous parameter splits
// coarsely and polishes cut positions on the atom grid.
inline QuantizationResult brute_force(const MixedMeasure& m, int n, int grid, Model model) {
    if (n < 1 || n > 3) throw InvalidArg("brute_force: n must be 1..3");
    if (grid < 512) throw InvalidArg("brute_force: grid >= 512");

    QuantizationResult out;
    out.model = model;
    out.n = n;
    out.method = Method::brute_force;
    out.ambient_dim = m.ambient_dim();

    if (m.ambient_dim() == 1) {
        std::vector<detail::Atom> atoms;
        for (const auto& c : m.components())
            for (const auto& a : detail::component_atoms(c, grid)) atoms.push_back(a);
        std::sort(atoms.begin(), atoms.end(),
                  [](const detail::Atom& a, const detail::Atom& b) { return a.x < b.x; });
        for (double x : detail::dp_1d_centroids(atoms, n)) out.points.push_back({x, 0.0});
        out.error = distortion(m, out.points);
        return out;
    }

    // planar circle + diameter
    const auto& comps = m.components();
    std::size_t arc_i = 0, seg_i = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (std::holds_alternative<Arc>(comps[i].geometry)) arc_i = i;
        else seg_i = i;
    }
    const auto circ_atoms = detail::component_atoms(comps[arc_i], grid);
    const auto seg_atoms = detail::component_atoms(comps[seg_i], grid);
    const int Gc = grid, Gs = grid;
    detail::PrefixSums circ, seg;
    circ.build(circ_atoms, 2);  // doubled for cyclic windows
    seg.build(seg_atoms, 1);

    const int coarse = 40;
    double best_cost = HUGE_VAL;
    detail::Shape best_shape;
    detail::SplitCandidate best_cand;

    for (const auto& sh : detail::shapes_for(n)) {
        detail::SplitCandidate cand;
        // enumerate coarse cuts
        std::vector<int> ccut(std::max(sh.r, 0)), scut(std::max(sh.s - 1, 0));
        auto eval_and_keep = [&]() {
            const double c = detail::eval_split(sh, circ, Gc, seg, Gs, ccut, scut);
            if (c < cand.cost) cand = {ccut, scut, c};
        };
        std::function<void(int, int)> enum_scut = [&](int idx, int start) {
            if (idx == static_cast<int>(scut.size())) { eval_and_keep(); return; }
            for (int c = start; c < coarse; ++c) {
                scut[idx] = c * Gs / coarse;
                enum_scut(idx + 1, c + 1);
            }
        };
        std::function<void(int, int)> enum_ccut = [&](int idx, int start) {
            if (idx == sh.r) { enum_scut(0, 1); return; }
            const int limit = idx == 0 ? coarse : coarse + (ccut[0] * coarse / Gc);
            for (int c = start; c < limit; ++c) {
                ccut[idx] = (c * Gc / coarse) % (2 * Gc);
                if (idx > 0 && ccut[idx] <= ccut[idx - 1]) continue;
                enum_ccut(idx + 1, c + 1);
            }
        };
        if (sh.r == 0) enum_scut(0, 1);
        else enum_ccut(0, 0);
        if (cand.cost == HUGE_VAL) continue;

        // polish cuts by coordinate descent on the atom grid
        const int window = Gc / coarse + 1;
        bool improved = true;
        int rounds = 0;
        while (improved && rounds++ < 60) {
            improved = false;
            for (std::size_t i = 0; i < cand.ccut.size(); ++i) {
                for (int d = -window; d <= window; ++d) {
                    auto trial = cand.ccut;
                    trial[i] += d;
                    if (i == 0 && (trial[i] < 0 || trial[i] >= Gc)) continue;
                    if (i > 0 && trial[i] <= trial[i - 1]) continue;
                    if (i + 1 < trial.size() && trial[i] >= trial[i + 1]) continue;
                    if (trial.size() > 1 && trial.back() >= trial[0] + Gc) continue;
                    const double c = detail::eval_split(sh, circ, Gc, seg, Gs, trial, cand.scut);
                    if (c < cand.cost - 1e-18) {
                        cand.ccut = trial;
                        cand.cost = c;
                        improved = true;
                    }
                }
            }
            for (std::size_t i = 0; i < cand.scut.size(); ++i) {
                for (int d = -window; d <= window; ++d) {
                    auto trial = cand.scut;
                    trial[i] += d;
                    if (trial[i] < 1 || trial[i] >= Gs) continue;
                    if (i > 0 && trial[i] <= trial[i - 1]) continue;
                    if (i + 1 < trial.size() && trial[i] >= trial[i + 1]) continue;
                    const double c = detail::eval_split(sh, circ, Gc, seg, Gs, cand.ccut, trial);
                    if (c < cand.cost - 1e-18) {
                        cand.scut = trial;
                        cand.cost = c;
                        improved = true;
                    }
                }
            }
        }
        if (cand.cost < best_cost) {
            best_cost = cand.cost;
            best_shape = sh;
            best_cand = cand;
        }
    }

    // rebuild centroids of the winning split
    std::vector<detail::PieceSum> clusters;
    std::vector<detail::PieceSum> shared(best_shape.s);
    for (int i = 0; i < best_shape.r; ++i) {
        const int a = best_cand.ccut[i];
        const int b = (i + 1 < best_shape.r) ? best_cand.ccut[i + 1] : best_cand.ccut[0] + Gc;
        detail::PieceSum ps;
        ps.add(circ, a, b);
        if (best_shape.arc_mate[i] < 0) clusters.push_back(ps);
        else shared[best_shape.arc_mate[i]] = ps;
    }
    std::vector<int> sedges{0};
    for (int c : best_cand.scut) sedges.push_back(c);
    sedges.push_back(Gs);
    for (int i = 0; i < best_shape.s; ++i) {
        detail::PieceSum ps;
        for (int a = 0; a < best_shape.r; ++a)
            if (best_shape.arc_mate[a] == i) ps = shared[i];
        ps.add(seg, sedges[i], sedges[i + 1]);
        clusters.push_back(ps);
    }
    for (const auto& ps : clusters)
        if (ps.w > 0.0) out.points.push_back(ps.centroid());
    canonicalize(out.points);
    out.error = distortion(m, out.points);
    return out;
}

}  // namespace mixquant
