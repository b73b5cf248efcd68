#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mixquant/result.hpp"

namespace mixquant {

// 12 significant digits, the CSV contract
inline std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// {model, n, method, allocation:{k,n1?,n2?}, points:[[f64]|f64], error, error_exact?}
inline nlohmann::json record_to_json(const QuantizationResult& r) {
    nlohmann::json j;
    j["model"] = to_string(r.model);
    j["n"] = r.n;
    j["method"] = to_string(r.method);
    if (r.allocation) {
        nlohmann::json a;
        a["k"] = r.allocation->k;
        if (r.allocation->n1) a["n1"] = *r.allocation->n1;
        if (r.allocation->n2) a["n2"] = *r.allocation->n2;
        j["allocation"] = a;
    }
    nlohmann::json pts = nlohmann::json::array();
    for (Point2 p : r.points) {
        if (r.ambient_dim == 1) pts.push_back(p.x);
        else pts.push_back(nlohmann::json::array({p.x, p.y}));
    }
    j["points"] = pts;
    j["error"] = r.error;
    if (r.error_exact) j["error_exact"] = r.error_exact->str();
    return j;
}

inline std::vector<Point2> points_from_json(const nlohmann::json& j) {
    std::vector<Point2> pts;
    for (const auto& p : j.at("points")) {
        if (p.is_number()) pts.push_back({p.get<double>(), 0.0});
        else pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    return pts;
}

inline std::string record_to_csv(const QuantizationResult& r) {
    std::ostringstream os;
    os << "model,n,method,k,n1,n2,error,error_exact,points\n";
    os << to_string(r.model) << ',' << r.n << ',' << to_string(r.method) << ',';
    if (r.allocation) {
        os << r.allocation->k << ',';
        os << (r.allocation->n1 ? std::to_string(*r.allocation->n1) : "") << ',';
        os << (r.allocation->n2 ? std::to_string(*r.allocation->n2) : "") << ',';
    } else {
        os << ",,,";
    }
    os << fmt12(r.error) << ',' << (r.error_exact ? r.error_exact->str() : "") << ',';
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        if (i) os << '|';
        if (r.ambient_dim == 1) os << fmt12(r.points[i].x);
        else os << fmt12(r.points[i].x) << ';' << fmt12(r.points[i].y);
    }
    os << '\n';
    return os.str();
}

}  // namespace mixquant
