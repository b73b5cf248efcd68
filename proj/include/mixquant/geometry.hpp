#pragma once

#include <cmath>
#include <numbers>
#include <variant>

#include "mixquant/errors.hpp"

namespace mixquant {

inline constexpr double kPi = std::numbers::pi;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
    friend Point2 operator/(Point2 p, double s) { return {p.x / s, p.y / s}; }
    friend bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Point2 p) { return p.x * p.x + p.y * p.y; }

// squared Euclidean distance
inline double rho(Point2 a, Point2 b) { return norm2(a - b); }

// Closed interval on the real line.
struct Interval {
    double lo;
    double hi;

    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo < hi)) throw InvalidArg("Interval requires lo < hi");
    }
    double length() const { return hi - lo; }
};

// Arc of the unit circle centered at the origin, theta_lo <= theta <= theta_hi.
struct Arc {
    double theta_lo;
    double theta_hi;

    Arc(double lo, double hi) : theta_lo(lo), theta_hi(hi) {
        if (!(0.0 <= lo && lo < hi && hi <= 2.0 * kPi + 1e-12))
            throw InvalidArg("Arc requires 0 <= theta_lo < theta_hi <= 2*pi");
    }
    double length() const { return theta_hi - theta_lo; }
    Point2 at(double theta) const { return {std::cos(theta), std::sin(theta)}; }
};

// Straight segment in the plane, parametrized by arc length t in [0, length()].
struct PlanarSegment {
    Point2 p0;
    Point2 p1;

    PlanarSegment(Point2 a, Point2 b) : p0(a), p1(b) {
        if (a == b) throw InvalidArg("PlanarSegment requires p0 != p1");
    }
    double length() const { return std::sqrt(norm2(p1 - p0)); }
    Point2 at(double t) const {
        const double L = length();
        return p0 + (t / L) * (p1 - p0);
    }
};

using Geometry = std::variant<Interval, Arc, PlanarSegment>;

inline double geometry_length(const Geometry& g) {
    return std::visit([](const auto& v) { return v.length(); }, g);
}

}  // namespace mixquant
