#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "mixquant/errors.hpp"

namespace mixquant {

// Bisection on a bracketed sign change. Deterministic and immune to the
// flat spots that bite Newton on these boundary equations.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol = 1e-14) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw InvalidArg("bisect: endpoints do not bracket a root");
    for (int i = 0; i < 200 && hi - lo > xtol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) { lo = mid; flo = fm; }
        else { hi = mid; }
    }
    return 0.5 * (lo + hi);
}

// Scan [lo, hi] in `steps` panels and bisect every sign change found.
template <class F>
std::vector<double> find_roots_scan(F&& f, double lo, double hi, int steps, double xtol = 1e-14) {
    std::vector<double> roots;
    double prev_x = lo, prev_f = f(lo);
    if (prev_f == 0.0) roots.push_back(lo);
    for (int i = 1; i <= steps; ++i) {
        const double x = lo + (hi - lo) * i / steps;
        const double fx = f(x);
        if (fx == 0.0) {
            roots.push_back(x);
        } else if (std::isfinite(prev_f) && std::isfinite(fx) && (prev_f > 0) != (fx > 0)) {
            roots.push_back(bisect(f, prev_x, x, xtol));
        }
        prev_x = x;
        prev_f = fx;
    }
    return roots;
}

// Golden-section minimization of a unimodal (or at least well-behaved)
// scalar function on [lo, hi].
template <class F>
double golden_min(F&& f, double lo, double hi, double xtol = 1e-12) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

// Dense Newton for systems of dimension <= 3 with a numeric Jacobian,
// backtracking damping and box projection.
struct NewtonOptions {
    int max_iters = 80;
    double tol = 1e-13;     // max-norm of residual
    double fd_step = 1e-7;  // relative finite-difference step
};

struct NewtonResult {
    std::vector<double> x;
    double residual = 0.0;
    bool converged = false;
};

inline NewtonResult newton_solve(const std::function<std::vector<double>(const std::vector<double>&)>& F,
                                 std::vector<double> x,
                                 const std::vector<std::pair<double, double>>& box,
                                 const NewtonOptions& opt = {}) {
    const std::size_t d = x.size();
    auto clamp = [&](std::vector<double>& v) {
        for (std::size_t i = 0; i < d; ++i)
            v[i] = std::min(std::max(v[i], box[i].first), box[i].second);
    };
    auto maxnorm = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double t : v) m = std::max(m, std::fabs(t));
        return m;
    };
    clamp(x);
    std::vector<double> fx = F(x);
    double res = maxnorm(fx);
    for (int it = 0; it < opt.max_iters && res > opt.tol; ++it) {
        // numeric Jacobian, forward differences
        std::vector<std::array<double, 3>> J(d);
        for (std::size_t j = 0; j < d; ++j) {
            const double h = opt.fd_step * std::max(1.0, std::fabs(x[j]));
            std::vector<double> xp = x;
            xp[j] = std::min(x[j] + h, box[j].second);
            const double hh = xp[j] - x[j];
            if (hh == 0.0) { xp[j] = x[j] - h; }
            const std::vector<double> fp = F(xp);
            for (std::size_t i = 0; i < d; ++i)
                J[i][j] = (fp[i] - fx[i]) / (xp[j] - x[j]);
        }
        // solve J * dx = -fx by Gaussian elimination with partial pivoting
        std::vector<std::array<double, 4>> M(d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) M[i][j] = J[i][j];
            M[i][3] = -fx[i];
        }
        bool singular = false;
        for (std::size_t col = 0; col < d; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < d; ++r)
                if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
            if (std::fabs(M[piv][col]) < 1e-300) { singular = true; break; }
            std::swap(M[col], M[piv]);
            for (std::size_t r = 0; r < d; ++r) {
                if (r == col) continue;
                const double m = M[r][col] / M[col][col];
                for (std::size_t j = col; j < 4; ++j) M[r][j] -= m * M[col][j];
            }
        }
        if (singular) break;
        std::vector<double> dx(d);
        for (std::size_t i = 0; i < d; ++i) dx[i] = M[i][3] / M[i][i];

        // backtracking line search on the residual norm
        double step = 1.0;
        bool improved = false;
        for (int ls = 0; ls < 40; ++ls) {
            std::vector<double> xn = x;
            for (std::size_t i = 0; i < d; ++i) xn[i] += step * dx[i];
            clamp(xn);
            std::vector<double> fn = F(xn);
            const double rn = maxnorm(fn);
            if (rn < res) {
                x = std::move(xn);
                fx = std::move(fn);
                res = rn;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    return {x, res, res <= opt.tol};
}

}  // namespace mixquant
