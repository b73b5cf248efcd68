// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Criteria 3 and 4 each contain a clause that is provably unattainable for
// the objects they quantify over (see the FAIL diagnostics); those checks are
// implemented as stated and left red rather than weakened.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "mixquant/mixquant.hpp"
#include "test_helpers.hpp"

using namespace mixquant;
using testutil::codebook_gap_aligned;

namespace {

int g_failures = 0;

struct Criterion {
    std::string detail;
    bool ok = true;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    void finish(int index, const std::string& title, double budget_s) {
        const double t = seconds();
        if (t > budget_s) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("runtime ") +
                      std::to_string(t) + "s exceeds " + std::to_string(budget_s) + "s";
        }
        if (ok) {
            std::printf("[PASS] criterion %d: %s (%.2fs)\n", index, title.c_str(), t);
        } else {
            std::printf("[FAIL] criterion %d: %s (%.2fs)\n       %s\n", index, title.c_str(), t,
                        detail.c_str());
            ++g_failures;
        }
    }
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.8g", v);
    return buf;
}

void criterion1() {
    Criterion c;
    const double refV[] = {0.343691, 0.2386,    0.163013, 0.119779, 0.093342,
                             0.070674, 0.0577852, 0.04803,  0.039046};
    const std::vector<std::vector<Point2>> ref = {
        {{-0.568310, 0}, {0.568310, 0}},
        {{0, 0.877439}, {-0.593906, -0.14179}, {0.593906, -0.14179}},
        {{0, 0.90407}, {-0.633881, 0}, {0, -0.90407}, {0.633881, 0}},
        {{0, 0.903584}, {-0.788308, 0}, {0, 0}, {0, -0.903584}, {0.788308, 0}},
        {{-0.497577, 0.809422}, {-0.786245, -0.0706781}, {0, 0}, {0, -0.913921},
         {0.786245, -0.0706781}, {0.497577, 0.809422}},
        {{-0.476891, 0.827476}, {-0.788772, 0}, {0, 0}, {-0.476891, -0.827476},
         {0.476891, -0.827476}, {0.788772, 0}, {0.476891, 0.827476}},
        {{-0.475258, 0.828843}, {-0.860649, 0}, {-0.286883, 0}, {-0.475258, -0.828843},
         {0.475258, -0.828843}, {0.860649, 0}, {0.286883, 0}, {0.475258, 0.828843}},
        {{-0.463928, 0.838108}, {-0.857223, 0.0396484}, {-0.286659, 0},
         {-0.704114, -0.671446}, {0, -0.972943}, {0.704114, -0.671446}, {0.286659, 0},
         {0.857223, 0.0396484}, {0.463928, 0.838108}},
        {{0, 0.974386}, {-0.690161, 0.687826}, {-0.854308, 0}, {-0.284769, 0},
         {-0.690161, -0.687826}, {0, -0.974386}, {0.690161, -0.687826}, {0.854308, 0},
         {0.284769, 0}, {0.690161, 0.687826}}};
    for (int n = 2; n <= 10; ++n) {
        const auto r = optimal_set(n);
        c.require(std::fabs(r.error - refV[n - 2]) <= 5e-5,
                  "V_" + std::to_string(n) + " = " + num(r.error) + " vs " + num(refV[n - 2]));
        c.require(codebook_gap_aligned(ref[n - 2], r.points) <= 1e-4,
                  "codebook gap at n=" + std::to_string(n));
    }
    c.finish(1, "circle+diameter V_2..V_10 and codebooks", 5.0);
}

void criterion2() {
    Criterion c;
    const auto p5 = solve_boundaries({1, 1, 1});
    c.require(std::fabs(p5.a - 0.394154) <= 1e-5, "a(n=5) = " + num(p5.a));
    c.require(std::fabs(p5.b - 0.798783) <= 1e-5, "b(n=5) = " + num(p5.b));
    const auto p4 = solve_boundaries({1, 1, 0});
    c.require(std::fabs(p4.b - 0.800791) <= 1e-5, "b(n=4) = " + num(p4.b));
    c.finish(2, "boundary parameters a, b at n = 5 and n = 4", 5.0);
}

void criterion3() {
    Criterion c;
    const double target = 3.0 * (4.0 + kPi * kPi) / 8.0;  // 5.2011002...
    const auto coef = coefficient_estimate(100);
    const auto dim = dimension_estimate(100);
    const double last = coef.back().second;
    c.require(std::fabs(last - target) <= 0.01 * target,
              "n^2 V_n at n=302 = " + num(last) + " vs " + num(target));
    c.require(dim.back().second > 0.85, "dim estimate at n=302 = " + num(dim.back().second));
    bool increasing = true;
    for (int k = 10; k < 100; ++k)
        if (!(dim[k].second > dim[k - 1].second)) increasing = false;
    c.require(increasing,
              "dimension estimate is NOT increasing over k=10..100: it falls monotonically "
              "from " + num(dim[9].second) + " (n=32) to " + num(dim[99].second) +
              " (n=302), approaching the limit 1 from above (2 log n / -log V_n > 1 because "
              "V_n > n^-2 here); an increasing approach is impossible for this mixture");
    c.finish(3, "asymptotics: coefficient within 1%, dimension estimate", 30.0);
}

void criterion4() {
    Criterion c;
    c.require(*optimal_set_disconnected(1).error_exact == Rational(277, 3072), "V_1 exact");
    c.require(*optimal_set_disconnected(2).error_exact == Rational(13, 768), "V_2 exact");
    c.require(*optimal_set_disconnected(3).error_exact == Rational(1, 192), "V_3 exact");
    c.require(*optimal_set_disconnected(9).error_exact == Rational(1, 1728), "V_9 exact");
    const int printed[] = {1, 2, 3, 3, 4, 5, 6, 6, 7, 8, 8, 9, 10,
                           10, 11, 12, 12, 13, 14, 15, 15, 16, 17, 17, 18, 19};
    for (int n = 2; n <= 27; ++n)
        c.require(alloc_disconnected(n) == printed[n - 2], "a(" + std::to_string(n) + ")");
    c.require(alloc_disconnected(14) == 10, "a(14)");
    c.require(alloc_disconnected(100) == 69, "a(100)");
    std::vector<int> diverging;
    for (int n = 2; n <= 200; ++n)
        if (local_search_alloc(n, SegmentModel::disconnected) != alloc_disconnected(n))
            diverging.push_back(n);
    std::ostringstream os;
    if (!diverging.empty()) {
        os << "local_search_alloc != min-definition at " << diverging.size()
           << " of n<=200 (first: ";
        for (std::size_t i = 0; i < std::min<std::size_t>(diverging.size(), 6); ++i)
            os << (i ? "," : "") << diverging[i];
        os << "); at n=18 the scan's split k=13 has error 469/3244800 < 1/6912 = error of "
              "a(18)=12 in exact arithmetic, so the two rules provably differ";
    }
    c.require(diverging.empty(), os.str());
    c.finish(4, "disconnected model: exact values and allocation sequences", 2.0);
}

void criterion5() {
    Criterion c;
    c.require(*optimal_set_connected(2).error_exact == Rational(1, 48), "V_2 exact");
    const auto r3 = optimal_set_connected(3);
    const double root = 21.0 - std::sqrt(3.0);
    const double u = (root / 8 - 2) / 3, v = root / 8 - 2, w = root / 24;
    c.require(std::fabs(r3.error - 0.00787482) <= 1e-8, "V_3 = " + num(r3.error));
    c.require(std::fabs(r3.points[0].x - u) <= 1e-10 && std::fabs(r3.points[1].x - v) <= 1e-10 &&
                  std::fabs(r3.points[2].x - w) <= 1e-10,
              "n=3 radical points");
    const double a16[] = {0.0255733, 0.0767199, 0.127866, 0.179013, 0.23016,
                          0.281306,  0.332453,  0.383599, 0.434746, 0.485893};
    const double b16[] = {0.564986, 0.644079, 0.723173, 0.802266, 0.88136, 0.960453};
    const auto r16 = optimal_set_connected(16);
    for (int i = 0; i < 10; ++i)
        c.require(std::fabs(r16.points[i].x - a16[i]) <= 1e-6, "a_" + std::to_string(i + 1));
    for (int i = 0; i < 6; ++i)
        c.require(std::fabs(r16.points[10 + i].x - b16[i]) <= 1e-6, "b_" + std::to_string(i + 1));
    c.require(std::fabs(r16.error - 0.000293827) <= 1e-9, "V_16 = " + num(r16.error));
    c.finish(5, "connected model: V_2 exact, n = 3 radicals, n = 16 example", 2.0);
}

void criterion6() {
    Criterion c;
    LloydConfig cfg;
    cfg.seed = 12345;
    cfg.max_iters = 600;
    cfg.tol = 1e-9;  // ample for the 1e-5 / 1e-4 comparisons below
    struct Case {
        MixedMeasure m;
        Model tag;
        int restarts;
    };
    const Case cases[] = {{circle_diameter_measure(), Model::circle_diameter, 64},
                          {disconnected_measure(), Model::disconnected, 32},
                          {connected_measure(), Model::connected, 32}};
    for (const auto& cs : cases) {
        cfg.restarts = cs.restarts;
        for (int n = 1; n <= 12; ++n) {
            QuantizationResult closed;
            switch (cs.tag) {
                case Model::circle_diameter: closed = optimal_set(n); break;
                case Model::disconnected: closed = optimal_set_disconnected(n); break;
                default: closed = optimal_set_connected(n); break;
            }
            const auto ora = lloyd(cs.m, n, cfg, cs.tag);
            c.require(std::fabs(ora.error - closed.error) <= 1e-5,
                      to_string(cs.tag) + " n=" + std::to_string(n) + " lloyd " +
                          num(ora.error) + " vs " + num(closed.error));
            c.require(codebook_gap_aligned(closed.points, ora.points) <= 1e-4,
                      to_string(cs.tag) + " n=" + std::to_string(n) + " codebook gap");
            if (n <= 3) {
                const int grid = cs.tag == Model::circle_diameter ? 1024 : 4096;
                const auto bf = brute_force(cs.m, n, grid, cs.tag);
                c.require(std::fabs(bf.error - closed.error) <= 1e-5,
                          to_string(cs.tag) + " n=" + std::to_string(n) + " brute force " +
                              num(bf.error));
            }
        }
    }
    c.finish(6, "oracle equivalence (lloyd n<=12, brute force n<=3, fixed seed)", 60.0);
}

void criterion7() {
    Criterion c;
    // centroid fixed-point residuals on every emitted codebook
    const auto cd = circle_diameter_measure();
    const auto dm = disconnected_measure();
    const auto cm = connected_measure();
    auto centroid_residual = [](const MixedMeasure& m, const QuantizationResult& r) {
        const auto cells = partition(m, r.points);
        double worst = 0.0;
        for (std::size_t j = 0; j < r.points.size(); ++j) {
            const auto [cent, mass] = cell_centroid(m, cells[j]);
            if (mass <= 0.0) return HUGE_VAL;
            worst = std::max(worst, std::sqrt(rho(cent, r.points[j])));
        }
        return worst;
    };
    double prev_cd = HUGE_VAL, prev_d = HUGE_VAL, prev_c = HUGE_VAL;
    for (int n = 1; n <= 16; ++n) {
        const auto r = optimal_set(n);
        c.require(centroid_residual(cd, r) < 1e-8, "circle centroid residual n=" + std::to_string(n));
        c.require(r.error < prev_cd, "circle V_n monotone at n=" + std::to_string(n));
        prev_cd = r.error;
    }
    for (int n = 1; n <= 50; ++n) {
        const auto rd = optimal_set_disconnected(n);
        const auto rc = optimal_set_connected(n);
        c.require(centroid_residual(dm, rd) < 1e-8, "disconnected residual n=" + std::to_string(n));
        c.require(centroid_residual(cm, rc) < 1e-8, "connected residual n=" + std::to_string(n));
        c.require(rd.error < prev_d && rc.error < prev_c,
                  "segment V_n monotone at n=" + std::to_string(n));
        prev_d = rd.error;
        prev_c = rc.error;
    }
    // allocation-neighborhood optimality: circle n <= 16
    for (int n = 5; n <= 16; ++n) {
        const auto al = allocation(n);
        const double V0 = solve_allocation(al).V;
        const int moves[4][3] = {{1, 0, -1}, {0, 1, -1}, {-1, 0, 1}, {0, -1, 1}};
        for (const auto& mv : moves) {
            const AllocationTriple nb{al.n1 + mv[0], al.n2 + mv[1], al.k + mv[2]};
            if (nb.n1 < 0 || nb.n2 < 0 || nb.k < 0) continue;
            if (nb.n1 == 0 && nb.n2 == 0 && nb.k == 0) continue;
            c.require(V0 < solve_allocation(nb).V,
                      "circle neighborhood at n=" + std::to_string(n));
        }
    }
    // segments n <= 50: the emitted split beats both neighbor splits
    for (int n = 2; n <= 50; ++n) {
        const int kd = optimal_set_disconnected(n).allocation->k;
        const Rational Vd = disconnected_split_error(n, kd);
        if (kd > 1)
            c.require(Vd < disconnected_split_error(n, kd - 1),
                      "disconnected neighborhood n=" + std::to_string(n));
        if (kd < n - 1)
            c.require(Vd < disconnected_split_error(n, kd + 1),
                      "disconnected neighborhood n=" + std::to_string(n));
        const int kc = optimal_set_connected(n).allocation->k;
        const auto Vc = solve_connected_split(n, kc);
        for (int nb : {kc - 1, kc + 1}) {
            if (nb < 1 || nb > n - 1) continue;
            const auto Vn = solve_connected_split(n, nb);
            if (Vn) c.require(Vc->error < Vn->error,
                              "connected neighborhood n=" + std::to_string(n));
        }
    }
    c.finish(7, "invariants: centroid residuals, monotone V_n, allocation neighborhoods", 60.0);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    if (g_failures == 0) std::printf("all criteria passed\n");
    else std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
