#pragma once

// Composite Gauss-Legendre machinery shared by the contour integrals and the
// Mittag-Leffler Hankel path. Panels are accepted when the 10- and 20-point
// rules agree; otherwise they are bisected.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "core/errors.hpp"

namespace fracwave::quad {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

const GaussRule& gauss5();
const GaussRule& gauss10();
const GaussRule& gauss20();

template <class F>
auto apply_rule(F&& f, double a, double b, const GaussRule& rule)
{
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    decltype(f(mid)) sum{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return sum * half;
}

/// Adaptive bisection on [a, b]; the absolute budget `tol` is shared in
/// proportion to panel length.
template <class F>
std::complex<double> adaptive(F&& f, double a, double b, double tol, int max_depth = 48)
{
    struct Panel {
        double a, b;
        int depth;
    };
    const double total = b - a;
    if (!(total > 0.0)) {
        return {};
    }
    std::complex<double> sum{};
    std::vector<Panel> stack{{a, b, 0}};
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const std::complex<double> coarse = apply_rule(f, p.a, p.b, gauss10());
        const std::complex<double> fine = apply_rule(f, p.a, p.b, gauss20());
        const double err = std::abs(fine - coarse);
        const double budget = tol * (p.b - p.a) / total;
        if (!std::isfinite(err)) {
            throw NumericError("quadrature: non-finite integrand value");
        }
        if (err <= budget || err <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(fine)) {
            sum += fine;
            continue;
        }
        if (p.depth >= max_depth) {
            throw NumericError("quadrature: panel refinement limit reached");
        }
        const double mid = 0.5 * (p.a + p.b);
        stack.push_back({p.a, mid, p.depth + 1});
        stack.push_back({mid, p.b, p.depth + 1});
    }
    return sum;
}

/// Panel layout along a ray r in [0, end]. Near r = 0 the integrand behaves
/// like r^lead (lead > -1); the innermost panel [0, inner] is integrated after
/// the substitution r = inner * s^(1/(lead+1)), which removes that leading
/// singularity. Outside, panels double in length up to `max_width`.
struct RayLayout {
    double inner;
    double end;
    double max_width;
    double lead;
};

/// Panels on [a, end] that double in length from `a` until they reach
/// `max_width`, each refined adaptively.
template <class F>
std::complex<double> integrate_graded(F&& f, double a, double end, double max_width, double tol)
{
    std::complex<double> sum{};
    const double span = end - a;
    while (a < end) {
        const double b = std::min({2.0 * a, a + max_width, end});
        sum += adaptive(f, a, b, tol * (b - a) / span);
        a = b;
    }
    return sum;
}

template <class F>
std::complex<double> integrate_ray(F&& f, const RayLayout& layout, double tol)
{
    if (!(layout.lead > -1.0)) {
        throw ArgumentError("integrate_ray: leading exponent must exceed -1");
    }
    const double inner = std::min(layout.inner, layout.end);
    const double q = 1.0 / (layout.lead + 1.0);
    auto substituted = [&](double s) {
        const double r = inner * std::pow(s, q);
        return f(r) * (inner * q * std::pow(s, q - 1.0));
    };
    std::complex<double> sum = adaptive(substituted, 0.0, 1.0, 0.25 * tol);
    if (inner < layout.end) {
        sum += integrate_graded(f, inner, layout.end, layout.max_width, 0.75 * tol);
    }
    return sum;
}

}  // namespace fracwave::quad
