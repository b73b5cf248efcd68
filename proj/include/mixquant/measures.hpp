#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "mixquant/geometry.hpp"
#include "mixquant/quadrature.hpp"
#include "mixquant/roots.hpp"

namespace mixquant {

// One uniform piece of a mixture: a geometry carrying `weight` of the total
// probability mass, spread uniformly along its length.
struct Component {
    Geometry geometry;
    double weight;
    double density;  // mass per unit length (= per radian on unit arcs)

    Component(Geometry g, double w)
        : geometry(std::move(g)), weight(w), density(w / geometry_length(geometry)) {
        if (!(w > 0.0 && w < 1.0 + 1e-12)) throw InvalidArg("component weight must be in (0,1]");
    }

    bool is_interval() const { return std::holds_alternative<Interval>(geometry); }

    // parameter range: x for intervals, theta for arcs, arc length for segments
    std::pair<double, double> param_range() const {
        if (const auto* iv = std::get_if<Interval>(&geometry)) return {iv->lo, iv->hi};
        if (const auto* arc = std::get_if<Arc>(&geometry)) return {arc->theta_lo, arc->theta_hi};
        return {0.0, std::get<PlanarSegment>(geometry).length()};
    }

    Point2 at(double t) const {
        if (const auto* iv = std::get_if<Interval>(&geometry)) { (void)iv; return {t, 0.0}; }
        if (const auto* arc = std::get_if<Arc>(&geometry)) return arc->at(t);
        return std::get<PlanarSegment>(geometry).at(t);
    }
};

// Sub-ranges of each component's parameter space; the argument type of
// conditional_mean.  ranges[i] lists [t0,t1] pieces of component i.
struct Region {
    std::vector<std::vector<std::pair<double, double>>> ranges;
};

class MixedMeasure {
  public:
    MixedMeasure(std::vector<Component> comps, int ambient_dim)
        : components_(std::move(comps)), ambient_dim_(ambient_dim) {
        if (components_.empty()) throw InvalidArg("measure needs at least one component");
        if (ambient_dim != 1 && ambient_dim != 2) throw InvalidArg("ambient_dim must be 1 or 2");
        double total = 0.0;
        for (const auto& c : components_) {
            total += c.weight;
            if (ambient_dim == 1 && !c.is_interval())
                throw InvalidArg("1-D measures take interval components only");
            if (ambient_dim == 2 && c.is_interval())
                throw InvalidArg("2-D measures take arcs and segments only");
        }
        if (std::fabs(total - 1.0) > 1e-12) throw InvalidArg("component weights must sum to 1");
    }

    const std::vector<Component>& components() const { return components_; }
    int ambient_dim() const { return ambient_dim_; }

  private:
    std::vector<Component> components_;
    int ambient_dim_;
};

// ---------------------------------------------------------------------------
// the three mixtures studied here

// P = 1/2 uniform(unit circle) + 1/2 uniform(horizontal diameter)
inline MixedMeasure circle_diameter_measure() {
    return MixedMeasure({Component(PlanarSegment({-1.0, 0.0}, {1.0, 0.0}), 0.5),
                         Component(Arc(0.0, 2.0 * kPi), 0.5)},
                        2);
}

// P = 3/4 uniform[0,1/2] + 1/4 uniform[3/4,1]
inline MixedMeasure disconnected_measure() {
    return MixedMeasure({Component(Interval(0.0, 0.5), 0.75),
                         Component(Interval(0.75, 1.0), 0.25)},
                        1);
}

// P = 3/4 uniform[0,1/2] + 1/4 uniform[1/2,1]
inline MixedMeasure connected_measure() {
    return MixedMeasure({Component(Interval(0.0, 0.5), 0.75),
                         Component(Interval(0.5, 1.0), 0.25)},
                        1);
}

// ---------------------------------------------------------------------------
// closed-form mass / moment / distortion pieces

namespace detail {

inline double piece_mass(const Component& c, double t0, double t1) {
    return c.density * (t1 - t0);
}

inline Point2 piece_moment(const Component& c, double t0, double t1) {
    const double d = c.density;
    if (c.is_interval()) return {d * 0.5 * (t1 * t1 - t0 * t0), 0.0};
    if (std::holds_alternative<Arc>(c.geometry)) {
        return {d * (std::sin(t1) - std::sin(t0)), d * (std::cos(t0) - std::cos(t1))};
    }
    const auto& seg = std::get<PlanarSegment>(c.geometry);
    const double L = seg.length();
    const Point2 u = seg.p1 - seg.p0;
    return d * ((t1 - t0) * seg.p0 + (0.5 * (t1 * t1 - t0 * t0) / L) * u);
}

// unnormalized E|X|^2 over the piece
inline double piece_second_moment(const Component& c, double t0, double t1) {
    const double d = c.density;
    if (c.is_interval()) return d * (t1 * t1 * t1 - t0 * t0 * t0) / 3.0;
    if (std::holds_alternative<Arc>(c.geometry)) return d * (t1 - t0);  // radius 1
    const auto& seg = std::get<PlanarSegment>(c.geometry);
    const double L = seg.length();
    const Point2 u = seg.p1 - seg.p0;
    return d * (norm2(seg.p0) * (t1 - t0) + dot(seg.p0, u) * (t1 * t1 - t0 * t0) / L +
                norm2(u) * (t1 * t1 * t1 - t0 * t0 * t0) / (3.0 * L * L));
}

// integral of squared distance to p over the piece (exact antiderivative)
inline double piece_distortion(const Component& c, double t0, double t1, Point2 p) {
    const double d = c.density;
    if (c.is_interval()) {
        const double a = t0 - p.x, b = t1 - p.x;
        return d * (b * b * b - a * a * a) / 3.0;
    }
    if (std::holds_alternative<Arc>(c.geometry)) {
        // |x(theta) - p|^2 = 1 + |p|^2 - 2 p.x cos - 2 p.y sin
        return d * ((1.0 + norm2(p)) * (t1 - t0) - 2.0 * p.x * (std::sin(t1) - std::sin(t0)) +
                    2.0 * p.y * (std::cos(t1) - std::cos(t0)));
    }
    const auto& seg = std::get<PlanarSegment>(c.geometry);
    const double L = seg.length();
    const Point2 u = seg.p1 - seg.p0;
    const Point2 w = seg.p0 - p;
    // |w + u t/L|^2 integrated in t
    return d * (norm2(w) * (t1 - t0) + dot(w, u) * (t1 * t1 - t0 * t0) / L +
                norm2(u) * (t1 * t1 * t1 - t0 * t0 * t0) / (3.0 * L * L));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// codebooks and Voronoi partitions

using Codebook = std::vector<Point2>;

struct CellPiece {
    std::size_t component;
    double t0;
    double t1;
};

// Pre-evaluated scan grid over the support curves; the crossing scan hits the
// same parameters every call, so repeated partitions (Lloyd) share this.
struct SupportSamples {
    struct PerComponent {
        std::vector<double> t;
        std::vector<Point2> p;
    };
    std::vector<PerComponent> comps;

    explicit SupportSamples(const MixedMeasure& m) {
        for (const auto& c : m.components()) {
            PerComponent s;
            const auto [lo, hi] = c.param_range();
            const bool is_arc = std::holds_alternative<Arc>(c.geometry);
            const double step = is_arc ? kPi / 1024.0 : (hi - lo) / 1024.0;
            const int steps = std::max(2, static_cast<int>(std::ceil((hi - lo) / step)));
            for (int i = 0; i <= steps; ++i) {
                const double t = lo + (hi - lo) * i / steps;
                s.t.push_back(t);
                s.p.push_back(c.at(t));
            }
            comps.push_back(std::move(s));
        }
    }
};

// Voronoi partition of the support: pieces[j] are the parameter ranges owned
// by codebook point j.  1-D cells are midpoint intervals (exact); on curves
// the crossings are located by scan + bisection on the squared-distance
// difference of the two competing points.
inline std::vector<std::vector<CellPiece>> partition(const MixedMeasure& m, const Codebook& cb,
                                                     const SupportSamples* samples = nullptr) {
    if (cb.empty()) throw InvalidArg("partition: empty codebook");
    std::vector<std::vector<CellPiece>> cells(cb.size());

    if (m.ambient_dim() == 1) {
        std::vector<std::size_t> order(cb.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto i, auto j) { return cb[i].x < cb[j].x; });
        for (std::size_t r = 0; r + 1 < order.size(); ++r)
            if (!(cb[order[r]].x < cb[order[r + 1]].x))
                throw InvalidArg("1-D codebook points must be distinct");
        for (std::size_t ci = 0; ci < m.components().size(); ++ci) {
            const auto [lo, hi] = m.components()[ci].param_range();
            for (std::size_t r = 0; r < order.size(); ++r) {
                const double cell_lo = (r == 0) ? -HUGE_VAL : 0.5 * (cb[order[r - 1]].x + cb[order[r]].x);
                const double cell_hi = (r + 1 == order.size()) ? HUGE_VAL
                                                               : 0.5 * (cb[order[r]].x + cb[order[r + 1]].x);
                const double t0 = std::max(lo, cell_lo);
                const double t1 = std::min(hi, cell_hi);
                if (t1 > t0) cells[order[r]].push_back({ci, t0, t1});
            }
        }
        return cells;
    }

    auto nearest = [&](Point2 x) {
        std::size_t best = 0;
        double bd = rho(x, cb[0]);
        for (std::size_t j = 1; j < cb.size(); ++j) {
            const double d = rho(x, cb[j]);
            if (d < bd) { bd = d; best = j; }
        }
        return best;
    };

    const SupportSamples* scan = samples;
    std::optional<SupportSamples> own;
    if (!scan) {
        own.emplace(m);
        scan = &*own;
    }
    for (std::size_t ci = 0; ci < m.components().size(); ++ci) {
        const auto& comp = m.components()[ci];
        const auto& s = scan->comps[ci];
        const auto [lo, hi] = comp.param_range();

        double seg_start = lo;
        std::size_t cur = nearest(s.p[0]);
        for (std::size_t i = 1; i < s.t.size(); ++i) {
            const std::size_t idx = nearest(s.p[i]);
            if (idx != cur) {
                const std::size_t a = cur, b = idx;
                const double cross = bisect(
                    [&](double u) { return rho(comp.at(u), cb[a]) - rho(comp.at(u), cb[b]); },
                    s.t[i - 1], s.t[i], 1e-12);
                cells[cur].push_back({ci, seg_start, cross});
                seg_start = cross;
                cur = idx;
            }
        }
        cells[cur].push_back({ci, seg_start, hi});
    }
    return cells;
}

// ---------------------------------------------------------------------------
// moments and distortion

inline Point2 mean(const MixedMeasure& m) {
    Point2 mom{0.0, 0.0};
    for (const auto& c : m.components()) {
        const auto [lo, hi] = c.param_range();
        mom = mom + detail::piece_moment(c, lo, hi);
    }
    return mom;  // total mass is 1
}

inline double variance(const MixedMeasure& m) {
    double second = 0.0;
    for (const auto& c : m.components()) {
        const auto [lo, hi] = c.param_range();
        second += detail::piece_second_moment(c, lo, hi);
    }
    return second - norm2(mean(m));
}

inline double distortion(const MixedMeasure& m, const Codebook& cb) {
    const auto cells = partition(m, cb);
    double total = 0.0;
    for (std::size_t j = 0; j < cb.size(); ++j)
        for (const auto& piece : cells[j])
            total += detail::piece_distortion(m.components()[piece.component], piece.t0, piece.t1, cb[j]);
    return total;
}

// Independent route: adaptive quadrature on the min-distance integrand.
inline double distortion_quadrature(const MixedMeasure& m, const Codebook& cb, double abs_tol = 1e-10) {
    if (cb.empty()) throw InvalidArg("distortion: empty codebook");
    double total = 0.0;
    const double comp_tol = abs_tol / static_cast<double>(m.components().size());
    for (const auto& c : m.components()) {
        const auto [lo, hi] = c.param_range();
        total += integrate(
            [&](double t) {
                const Point2 x = c.at(t);
                double best = rho(x, cb[0]);
                for (std::size_t j = 1; j < cb.size(); ++j) best = std::min(best, rho(x, cb[j]));
                return c.density * best;
            },
            lo, hi, comp_tol);
    }
    return total;
}

// Mass-weighted centroid of a union of parameter sub-ranges.
inline Point2 conditional_mean(const MixedMeasure& m, const Region& region) {
    if (region.ranges.size() != m.components().size())
        throw InvalidArg("region must list ranges for every component");
    double mass = 0.0;
    Point2 mom{0.0, 0.0};
    for (std::size_t ci = 0; ci < m.components().size(); ++ci) {
        const auto& c = m.components()[ci];
        for (const auto& [t0, t1] : region.ranges[ci]) {
            if (t1 <= t0) continue;
            mass += detail::piece_mass(c, t0, t1);
            mom = mom + detail::piece_moment(c, t0, t1);
        }
    }
    if (mass < 1e-14) throw ZeroMass("conditional_mean: region mass underflow");
    return mom / mass;
}

// Centroid + mass of one codebook cell, given the partition pieces.
inline std::pair<Point2, double> cell_centroid(const MixedMeasure& m,
                                               const std::vector<CellPiece>& pieces) {
    double mass = 0.0;
    Point2 mom{0.0, 0.0};
    for (const auto& p : pieces) {
        mass += detail::piece_mass(m.components()[p.component], p.t0, p.t1);
        mom = mom + detail::piece_moment(m.components()[p.component], p.t0, p.t1);
    }
    if (mass < 1e-14) return {{0.0, 0.0}, 0.0};
    return {mom / mass, mass};
}

}  // namespace mixquant
