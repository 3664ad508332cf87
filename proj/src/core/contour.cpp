#include "core/contour.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "core/kernel.hpp"
#include "core/quadrature.hpp"

namespace fracwave {

using cplx = std::complex<double>;
using std::numbers::pi;

ContourSpec ContourSpec::for_order(FracOrder alpha, double tol)
{
    const double a = alpha.value();
    const double upper = (a + 3.0) / (4.0 * a + 4.0) * pi;
    ContourSpec spec{std::min(0.75 * pi, 0.5 * (0.5 * pi + upper)), tol};
    spec.validate(alpha);
    return spec;
}

void ContourSpec::validate(FracOrder alpha) const
{
    const double a = alpha.value();
    const double upper = (a + 3.0) / (4.0 * a + 4.0) * pi;
    if (!(theta > 0.5 * pi && theta < upper)) {
        throw DomainError("contour angle outside (pi/2, (alpha+3)/(4 alpha+4) pi)");
    }
    if (!(tol > 0.0 && tol < 1.0)) {
        throw DomainError("contour tolerance must lie in (0, 1)");
    }
}

double ContourSpec::truncation(double t) const
{
    return std::log(1.0 / tol) / (t * std::abs(std::cos(theta))) * 1.05;
}

namespace {

// Upper-ray integral over r in [0, end] of e^{t z} G(z) dz with z = r e^{i theta},
// laid out in the scaled variable s = t r.
template <class G>
cplx ray_integral(G&& g, double t, double theta, double end, double lead, double scale, double tol)
{
    const cplx dir = std::polar(1.0, theta);
    auto f = [&](double s) {
        const cplx z = (s / t) * dir;
        return std::exp(s * dir) * g(z) * dir / t;
    };
    quad::RayLayout layout{};
    layout.end = end * t;
    layout.inner = 1e-3 * std::min(1.0, scale * t);
    layout.max_width = 0.5 * pi / std::sin(theta);
    layout.lead = lead;
    return quad::integrate_ray(f, layout, tol);
}

void check_time(double t)
{
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError("contour: evaluation time must be positive");
    }
}

}  // namespace

double contour_xi_hom(double lambda, FracOrder alpha, double t, double xi0, const ContourSpec& spec)
{
    check_time(t);
    if (lambda < 0.0) {
        throw DomainError("contour_xi_hom: lambda must be nonnegative");
    }
    spec.validate(alpha);
    if (lambda == 0.0 || xi0 == 0.0) {
        return xi0;
    }
    const double a = alpha.value();
    auto g = [&](cplx z) {
        const cplx za = std::exp(a * std::log(z));
        return za / (z * za + lambda);
    };
    const double pole = std::pow(lambda, 1.0 / (1.0 + a));
    const cplx I = ray_integral(g, t, spec.theta, spec.truncation(t), a, pole, spec.tol);
    return xi0 * I.imag() / pi;
}

double contour_xi_forced(double lambda, FracOrder alpha, double t, const ContourSpec& spec)
{
    check_time(t);
    if (lambda < 0.0) {
        throw DomainError("contour_xi_forced: lambda must be nonnegative");
    }
    spec.validate(alpha);
    if (lambda == 0.0) {
        return t;
    }
    const double a = alpha.value();
    auto g = [&](cplx z) {
        const cplx z1a = std::exp((1.0 - a) * std::log(z));
        return 1.0 / (z * z + lambda * z1a);
    };
    const double pole = std::pow(lambda, 1.0 / (1.0 + a));
    // the forced solution grows like t, so scale the budget accordingly
    const cplx I = ray_integral(g, t, spec.theta, spec.truncation(t), a - 1.0, pole, spec.tol * std::max(1.0, t));
    return I.imag() / pi;
}

namespace {

// (1/pi) Im of the upper half of the contour, |Im z| <= pi, for integrand
// e^{shift z} / ((1 + mu psi(z)) (e^z - 1)^power).
double discrete_contour(double mu, FracOrder alpha, double shift, int power, double lead, const ContourSpec& spec)
{
    const Psi psi(alpha);
    const cplx dir = std::polar(1.0, spec.theta);
    const double end = pi / std::sin(spec.theta);
    auto f = [&](double r) {
        const cplx z = r * dir;
        cplx denom = 1.0 + mu * psi(z);
        const cplx em1 = expm1_complex(z);
        for (int i = 0; i < power; ++i) {
            denom *= em1;
        }
        return std::exp(shift * z) / denom * dir;
    };
    const double a = alpha.value();
    quad::RayLayout layout{};
    layout.end = end;
    layout.inner = 1e-3 * std::min({1.0, std::pow(mu, 1.0 / (1.0 + a)), 1.0 / shift});
    layout.max_width = std::min(0.5, pi / (shift * std::sin(spec.theta)));
    layout.lead = lead;
    return quad::integrate_ray(f, layout, spec.tol).imag() / pi;
}

}  // namespace

double contour_Yk_hom(double mu, FracOrder alpha, std::size_t k, double xi0, const ContourSpec& spec)
{
    if (k == 0) {
        throw ArgumentError("contour_Yk_hom: k must be positive");
    }
    if (mu < 0.0) {
        throw DomainError("contour_Yk_hom: mu must be nonnegative");
    }
    spec.validate(alpha);
    if (mu == 0.0 || xi0 == 0.0) {
        return xi0;
    }
    return xi0 * discrete_contour(mu, alpha, static_cast<double>(k), 1, alpha.value(), spec);
}

double contour_Yk_forced(double mu, FracOrder alpha, std::size_t k, double tau, const ContourSpec& spec)
{
    if (k == 0) {
        throw ArgumentError("contour_Yk_forced: k must be positive");
    }
    if (mu < 0.0) {
        throw DomainError("contour_Yk_forced: mu must be nonnegative");
    }
    if (!(tau > 0.0)) {
        throw DomainError("contour_Yk_forced: tau must be positive");
    }
    spec.validate(alpha);
    if (mu == 0.0) {
        return static_cast<double>(k) * tau;
    }
    return tau * discrete_contour(mu, alpha, static_cast<double>(k + 1), 2, alpha.value() - 1.0, spec);
}

}  // namespace fracwave
