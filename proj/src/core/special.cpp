#include "core/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace fracwave {

using cplx = std::complex<double>;
using std::numbers::pi;

double gamma_fn(double x)
{
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("gamma_fn: argument must be positive and finite");
    }
    return std::tgamma(x);
}

double rgamma(double x)
{
    if (x <= 0.0 && x == std::floor(x)) {
        return 0.0;
    }
    const double g = std::tgamma(x);
    if (!std::isfinite(g)) {
        return 0.0;
    }
    return 1.0 / g;
}

namespace detail {

cplx ml_series(double beta, double gamma, cplx z)
{
    cplx sum = rgamma(gamma);
    cplx power = 1.0;
    int quiet = 0;
    for (int n = 1; n < 1000; ++n) {
        power *= z;
        const cplx term = power * rgamma(beta * n + gamma);
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) {
            if (++quiet == 3) {
                return sum;
            }
        } else {
            quiet = 0;
        }
        if (power == 0.0) {
            return sum;
        }
    }
    throw NumericError("mittag_leffler: power series did not converge");
}

namespace {

// Poles of 1/(s^beta - z) on the principal sheet, -pi < arg s <= pi.
std::vector<cplx> ml_poles(double beta, cplx z)
{
    std::vector<cplx> poles;
    const double az = std::abs(z);
    if (az == 0.0) {
        return poles;
    }
    const double rho = std::pow(az, 1.0 / beta);
    const double argz = std::arg(z);
    const int jmin = static_cast<int>(std::ceil((-pi * beta - argz) / (2.0 * pi)));
    const int jmax = static_cast<int>(std::floor((pi * beta - argz) / (2.0 * pi)));
    for (int j = jmin; j <= jmax; ++j) {
        const double th = (argz + 2.0 * pi * j) / beta;
        if (th > -pi && th <= pi) {
            poles.push_back(std::polar(rho, th));
        }
    }
    return poles;
}

cplx ml_residue(double beta, double gamma, cplx s)
{
    return std::pow(s, 1.0 - gamma) * std::exp(s) / beta;
}

}  // namespace

cplx ml_hankel(double beta, double gamma, cplx z)
{
    constexpr double tol = 1e-15;
    const std::vector<cplx> poles = ml_poles(beta, z);
    const double rho = poles.empty() ? 0.0 : std::abs(poles.front());

    // Ray angle farthest (in argument) from every pole.
    double phi = 0.75 * pi;
    double best_gap = -1.0;
    for (int c = 11; c <= 19; ++c) {
        const double cand = 0.05 * pi * c;
        double gap = pi;
        for (const cplx& s : poles) {
            gap = std::min(gap, std::abs(std::abs(std::arg(s)) - cand));
        }
        if (gap > best_gap) {
            best_gap = gap;
            phi = cand;
        }
    }

    cplx residues = 0.0;
    for (const cplx& s : poles) {
        if (std::abs(std::arg(s)) < phi) {
            residues += ml_residue(beta, gamma, s);
        }
    }

    const double eps = poles.empty() ? 0.5 : 0.5 * std::min(1.0, rho);
    const double r_max = std::max(2.0 * rho + 1.0, (std::log(1.0 / tol) + 5.0) / std::abs(std::cos(phi)));
    auto g = [&](cplx s) { return std::exp(s) * std::pow(s, beta - gamma) / (std::pow(s, beta) - z); };

    const cplx up = std::polar(1.0, phi);
    const cplx down = std::conj(up);
    auto upper = [&](double r) { return g(r * up) * up; };
    auto lower = [&](double r) { return g(r * down) * down; };
    auto arc = [&](double psi) {
        const cplx s = std::polar(eps, psi);
        return g(s) * cplx(0.0, 1.0) * s;
    };
    const double width = std::min(1.0, std::max(0.05, 0.5 * rho * std::sin(std::max(best_gap, 0.01))));
    const cplx integral = quad::integrate_graded(upper, eps, r_max, width, tol)
                          - quad::integrate_graded(lower, eps, r_max, width, tol)
                          + quad::adaptive(arc, -phi, phi, tol);
    return integral / cplx(0.0, 2.0 * pi) + residues;
}

bool ml_asymptotic(double beta, double gamma, double z, cplx& out)
{
    if (!(beta < 2.0) || !(z <= -50.0)) {
        return false;
    }
    double sum = 0.0;
    double smallest = std::numeric_limits<double>::infinity();
    bool converged = false;
    int quiet = 0;
    double zpow = 1.0;
    for (int k = 1; k <= 400; ++k) {
        zpow /= z;
        const double term = -zpow * rgamma(gamma - beta * k);
        const double a = std::abs(term);
        if (a == 0.0) {
            continue;
        }
        if (a > 1e3 * smallest) {
            break;  // past the optimal truncation point
        }
        smallest = std::min(smallest, a);
        sum += term;
        quiet = a <= 1e-17 * std::abs(sum) ? quiet + 1 : 0;
        if (quiet == 2) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        return false;
    }
    cplx res = 0.0;
    for (const cplx& s : ml_poles(beta, cplx(z, 0.0))) {
        if (std::abs(std::arg(s)) < pi) {
            res += ml_residue(beta, gamma, s);
        }
    }
    out = cplx(sum + res.real(), 0.0);
    return true;
}

}  // namespace detail

cplx mittag_leffler(double beta, double gamma, cplx z)
{
    if (!(beta > 0.0) || !(gamma > 0.0)) {
        throw ArgumentError("mittag_leffler: beta and gamma must be positive");
    }
    const double series_radius = beta >= 1.0 ? 5.0 : 1.0;
    if (std::abs(z) <= series_radius) {
        return detail::ml_series(beta, gamma, z);
    }
    if (z.imag() == 0.0 && z.real() <= -50.0) {
        cplx out;
        if (detail::ml_asymptotic(beta, gamma, z.real(), out)) {
            return out;
        }
    }
    return detail::ml_hankel(beta, gamma, z);
}

}  // namespace fracwave
