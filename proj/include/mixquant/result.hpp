#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mixquant/geometry.hpp"
#include "mixquant/rational.hpp"

namespace mixquant {

enum class Model { circle_diameter, disconnected, connected };
enum class Method { closed_form, lloyd, brute_force };

inline std::string to_string(Model m) {
    switch (m) {
        case Model::circle_diameter: return "circle-diameter";
        case Model::disconnected: return "disconnected";
        case Model::connected: return "connected";
    }
    return "?";
}

inline std::string to_string(Method m) {
    switch (m) {
        case Method::closed_form: return "closed-form";
        case Method::lloyd: return "lloyd";
        case Method::brute_force: return "brute-force";
    }
    return "?";
}

// split of the codebook among mixture pieces
struct Allocation {
    int k = 0;                // points on the diameter / in J1
    std::optional<int> n1;    // circle model: arc points above the axis
    std::optional<int> n2;    // circle model: arc points below
};

struct QuantizationResult {
    Model model;
    int n = 0;
    Method method = Method::closed_form;
    int ambient_dim = 1;
    std::vector<Point2> points;  // canonical order: by x, then y
    std::optional<Allocation> allocation;
    double error = 0.0;
    std::optional<Rational> error_exact;
};

inline void canonicalize(std::vector<Point2>& pts) {
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
}

}  // namespace mixquant
