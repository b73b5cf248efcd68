// Command-line surface for the mixed-distribution quantizers: compute optimal
// sets, emit allocation/error tables, verify closed forms against the Lloyd
// oracle, and dump asymptotics data.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixquant/mixquant.hpp"
#include "mixquant/serialize.hpp"

namespace {

using json = nlohmann::json;
using namespace mixquant;

Model parse_model(const std::string& s) {
    if (s == "circle-diameter") return Model::circle_diameter;
    if (s == "disconnected") return Model::disconnected;
    if (s == "connected") return Model::connected;
    throw InvalidArg("unknown model '" + s + "'");
}

Method parse_method(const std::string& s) {
    if (s == "closed-form") return Method::closed_form;
    if (s == "lloyd") return Method::lloyd;
    if (s == "brute-force") return Method::brute_force;
    throw InvalidArg("unknown method '" + s + "'");
}

MixedMeasure measure_of(Model m) {
    switch (m) {
        case Model::circle_diameter: return circle_diameter_measure();
        case Model::disconnected: return disconnected_measure();
        default: return connected_measure();
    }
}

QuantizationResult closed_form_set(Model m, int n) {
    switch (m) {
        case Model::circle_diameter: return optimal_set(n);
        case Model::disconnected: return optimal_set_disconnected(n);
        default: return optimal_set_connected(n);
    }
}

int default_restarts(Model m) { return m == Model::circle_diameter ? 64 : 32; }

void write_output(const std::string& text, const std::string& out_file) {
    if (out_file.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_file);
    if (!f) throw InvalidArg("cannot open output file '" + out_file + "'");
    f << text;
}

struct CommonOpts {
    std::string model = "disconnected";
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 0;
    int restarts = 0;  // 0 = per-model default
    double tol = 1e-10;
};

int cmd_quantize(const CommonOpts& c, int n, const std::string& method_str) {
    const Model model = parse_model(c.model);
    const Method method = parse_method(method_str);
    QuantizationResult r;
    if (method == Method::closed_form) {
        r = closed_form_set(model, n);
    } else if (method == Method::lloyd) {
        LloydConfig cfg;
        cfg.seed = c.seed;
        cfg.restarts = c.restarts > 0 ? c.restarts : default_restarts(model);
        cfg.tol = c.tol;
        cfg.max_iters = 1000;
        r = lloyd(measure_of(model), n, cfg, model);
    } else {
        r = brute_force(measure_of(model), n, 4096, model);
    }
    if (c.format == "csv") write_output(record_to_csv(r), c.out);
    else write_output(record_to_json(r).dump() + "\n", c.out);
    return 0;
}

int cmd_table(const CommonOpts& c, int n_min, int n_max) {
    const Model model = parse_model(c.model);
    if (n_min < 1 || n_min > n_max || n_max > 10000)
        throw InvalidArg("table: need 1 <= n-min <= n-max <= 10000");
    if (model == Model::circle_diameter && n_max > 2000)
        throw InvalidArg("table: circle-diameter rows are capped at n = 2000");
    const bool circle = model == Model::circle_diameter;
    std::ostringstream os;
    json rows = json::array();
    if (c.format == "csv") os << (circle ? "n,k,n1,n2,Vn\n" : "n,k,Vn\n");
    for (int n = n_min; n <= n_max; ++n) {
        const QuantizationResult r = closed_form_set(model, n);
        const Allocation a = r.allocation.value_or(Allocation{});
        if (c.format == "csv") {
            if (circle)
                os << n << ',' << a.k << ',' << a.n1.value_or(0) << ',' << a.n2.value_or(0) << ','
                   << fmt12(r.error) << '\n';
            else
                os << n << ',' << a.k << ',' << fmt12(r.error) << '\n';
        } else {
            json row;
            row["n"] = n;
            row["k"] = a.k;
            if (circle) {
                row["n1"] = a.n1.value_or(0);
                row["n2"] = a.n2.value_or(0);
            }
            row["error"] = r.error;
            if (r.error_exact) row["error_exact"] = r.error_exact->str();
            rows.push_back(row);
        }
    }
    if (c.format == "csv") write_output(os.str(), c.out);
    else write_output(rows.dump() + "\n", c.out);
    return 0;
}

int cmd_verify(const CommonOpts& c, int n_max) {
    const Model model = parse_model(c.model);
    if (n_max < 1) throw InvalidArg("verify: n-max >= 1");
    const MixedMeasure m = measure_of(model);
    LloydConfig cfg;
    cfg.seed = c.seed;
    cfg.restarts = c.restarts > 0 ? c.restarts : default_restarts(model);
    cfg.tol = c.tol;
    cfg.max_iters = 1000;
    constexpr double kTol = 1e-5;
    int failures = 0;
    std::ostringstream os;
    for (int n = 1; n <= n_max; ++n) {
        const QuantizationResult closed = closed_form_set(model, n);
        const QuantizationResult ora = lloyd(m, n, cfg, model);
        const double delta = ora.error - closed.error;
        const bool ok = std::fabs(delta) <= kTol;
        if (!ok) ++failures;
        os << (ok ? "pass" : "FAIL") << " n=" << n << " closed=" << fmt12(closed.error);
        if (closed.error_exact) os << " (" << closed.error_exact->str() << ")";
        os << " lloyd=" << fmt12(ora.error) << " delta=" << fmt12(delta) << '\n';
    }
    os << (failures == 0 ? "verified " : "FAILED ") << (n_max - failures) << "/" << n_max
       << " within " << fmt12(kTol) << '\n';
    write_output(os.str(), c.out);
    return failures == 0 ? 0 : 1;
}

int cmd_asymptotics(const CommonOpts& c, int k_max) {
    const Model model = parse_model(c.model);
    if (model != Model::circle_diameter)
        throw InvalidArg("asymptotics: only the circle-diameter model has one");
    if (k_max < 1 || k_max > 666) throw InvalidArg("asymptotics: need 1 <= k-max <= 666");
    const auto coef = coefficient_estimate(k_max);
    const auto dim = dimension_estimate(k_max);
    const double target = 3.0 * (4.0 + kPi * kPi) / 8.0;
    if (c.format == "csv") {
        std::ostringstream os;
        os << "n,n2Vn,dim_estimate\n";
        for (std::size_t i = 0; i < coef.size(); ++i)
            os << coef[i].first << ',' << fmt12(coef[i].second) << ',' << fmt12(dim[i].second)
               << '\n';
        os << "# coefficient target 3(4+pi^2)/8 = " << fmt12(target) << '\n';
        write_output(os.str(), c.out);
    } else {
        json j;
        json rows = json::array();
        for (std::size_t i = 0; i < coef.size(); ++i)
            rows.push_back({{"n", coef[i].first},
                            {"n2Vn", coef[i].second},
                            {"dim_estimate", dim[i].second}});
        j["rows"] = rows;
        j["coefficient_target"] = target;
        write_output(j.dump() + "\n", c.out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal quantizers for three mixed uniform distributions"};
    app.require_subcommand(1);

    CommonOpts copt;
    int n = 1, n_min = 1, n_max = 10, k_max = 100;
    std::string method = "closed-form";

    auto add_common = [&](CLI::App* sub, bool with_seed) {
        sub->add_option("--model", copt.model,
                        "circle-diameter | disconnected | connected");
        sub->add_option("--format", copt.format, "json | csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", copt.out, "write output to FILE instead of stdout");
        if (with_seed) {
            sub->add_option("--seed", copt.seed, "RNG seed for the Lloyd oracle");
            sub->add_option("--restarts", copt.restarts, "Lloyd restarts (0 = model default)");
            sub->add_option("--tol", copt.tol, "Lloyd movement tolerance");
        }
    };

    auto* q = app.add_subcommand("quantize", "optimal set of n-means for one n");
    q->add_option("--n", n, "codebook size")->required();
    q->add_option("--method", method, "closed-form | lloyd | brute-force");
    add_common(q, true);

    auto* t = app.add_subcommand("table", "allocation and error per n over a range");
    t->add_option("--n-min", n_min, "first n");
    t->add_option("--n-max", n_max, "last n")->required();
    add_common(t, false);

    auto* v = app.add_subcommand("verify", "Lloyd oracle vs closed forms for n <= n-max");
    v->add_option("--n-max", n_max, "largest n to verify")->required();
    add_common(v, true);

    auto* a = app.add_subcommand("asymptotics", "n^2 V_n and dimension estimate along n = 3k+2");
    a->add_option("--k-max", k_max, "largest k");
    add_common(a, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (q->parsed()) return cmd_quantize(copt, n, method);
        if (t->parsed()) return cmd_table(copt, n_min, n_max);
        if (v->parsed()) return cmd_verify(copt, n_max);
        if (a->parsed()) return cmd_asymptotics(copt, k_max);
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InvalidArg& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
