#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "mixquant/errors.hpp"

namespace mixquant {
namespace detail {

// Gauss-Legendre nodes/weights on [-1,1], computed once by Newton iteration
// on the Legendre polynomial.
template <int N>
struct GaussLegendre {
    std::array<double, N> node{};
    std::array<double, N> weight{};

    GaussLegendre() {
        for (int i = 0; i < N; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (N + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= N; ++k) {
                    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = N * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= N; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = N * (x * p1 - p0) / (x * x - 1.0);
            node[i] = x;
            weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

template <int N, class F>
double gl_panel(F&& f, double lo, double hi) {
    static const GaussLegendre<N> rule;
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double sum = 0.0;
    for (int i = 0; i < N; ++i) sum += rule.weight[i] * f(c + h * rule.node[i]);
    return h * sum;
}

template <class F>
double adaptive_rec(F&& f, double lo, double hi, double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double left = gl_panel<15>(f, lo, mid);
    const double right = gl_panel<15>(f, mid, hi);
    if (std::fabs(left + right - whole) <= tol || depth >= 60)
        return left + right;
    return adaptive_rec(f, lo, mid, left, 0.5 * tol, depth + 1) +
           adaptive_rec(f, mid, hi, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

// Adaptive Gauss-Legendre with interval bisection; integrands here are
// piecewise smooth (kinks at Voronoi crossings), which plain panels miss.
template <class F>
double integrate(F&& f, double lo, double hi, double abs_tol = 1e-12) {
    if (hi <= lo) return 0.0;
    const double whole = detail::gl_panel<15>(f, lo, hi);
    return detail::adaptive_rec(f, lo, hi, whole, abs_tol, 0);
}

}  // namespace mixquant
