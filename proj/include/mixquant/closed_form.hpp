#pragma once

#include <cmath>
#include <vector>

#include "mixquant/geometry.hpp"
#include "mixquant/measures.hpp"

namespace mixquant {

// Optimal n-point quantizer of a single uniform distribution together with
// its quantization error.
struct UniformQuantizer {
    Codebook points;
    double error;
    int n;
};

// Uniform on [lo, hi]: points lo + (2i-1)(hi-lo)/(2n), error (hi-lo)^2/(12 n^2).
inline UniformQuantizer interval_optimal(double lo, double hi, int n) {
    if (!(lo < hi) || n < 1) throw InvalidArg("interval_optimal: need lo < hi and n >= 1");
    UniformQuantizer q;
    q.n = n;
    const double len = hi - lo;
    for (int i = 1; i <= n; ++i)
        q.points.push_back({lo + (2.0 * i - 1.0) * len / (2.0 * n), 0.0});
    q.error = len * len / (12.0 * n * n);
    return q;
}

// Uniform on the unit circular arc alpha <= theta <= beta.  Points sit at a
// common radius (2n/w) sin(w/2n) on the bisecting angles; the error below is
// for the normalized (mass 1) arc measure.
inline UniformQuantizer arc_optimal(double alpha, double beta, int n) {
    if (!(0.0 <= alpha && alpha < beta && beta <= 2.0 * kPi + 1e-12) || n < 1)
        throw InvalidArg("arc_optimal: need 0 <= alpha < beta <= 2*pi and n >= 1");
    UniformQuantizer q;
    q.n = n;
    const double w = beta - alpha;
    const double radius = (2.0 * n / w) * std::sin(w / (2.0 * n));
    for (int j = 1; j <= n; ++j) {
        const double phi = alpha + (2.0 * j - 1.0) * w / (2.0 * n);
        q.points.push_back({radius * std::cos(phi), radius * std::sin(phi)});
    }
    q.error = (w * w - 2.0 * n * n + 2.0 * n * n * std::cos(w / n)) / (w * w);
    return q;
}

// Distortion of the optimal n-point arc quantizer when the arc carries line
// density `density` instead of normalized mass: density * w * (normalized
// error).  With density 1/(4*pi) this is the D_{n1}/D_{n2} term of the
// circle-diameter decomposition.
inline double weighted_arc_distortion(double b_lo, double b_hi, int n, double density) {
    if (!(b_lo < b_hi) || n < 1 || !(density > 0.0))
        throw InvalidArg("weighted_arc_distortion: bad arguments");
    const double w = b_hi - b_lo;
    return density * (w * w - 2.0 * n * n + 2.0 * n * n * std::cos(w / n)) / w;
}

}  // namespace mixquant
