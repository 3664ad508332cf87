#pragma once

// Laplace-inversion oracles for the two scalar model equations
//   xi' + lambda D^{-alpha} xi = 0,  xi(0) = xi0      (homogeneous)
//   xi' + lambda D^{-alpha} xi = 1,  xi(0) = 0        (forced)
// and for their time-discrete counterparts Y_k, all as integrals over the
// two rays arg z = +-theta. Conjugate symmetry of every integrand reduces each
// to (1/pi) Im of the upper-ray integral.

#include <cstddef>

#include "core/grid.hpp"

namespace fracwave {

struct ContourSpec {
    double theta;  // ray angle, pi/2 < theta < (alpha+3)/(4 alpha+4) pi
    double tol;    // absolute quadrature target, relative to |xi0| (or tau)

    /// theta = min(3 pi/4, midpoint of the admissible window).
    static ContourSpec for_order(FracOrder alpha, double tol = 1e-13);

    /// Throws DomainError when theta is outside the window for `alpha` or tol is not in (0, 1).
    void validate(FracOrder alpha) const;

    /// Radial truncation for evaluation time t: exp(t r_max cos theta) < tol.
    [[nodiscard]] double truncation(double t) const;
};

double contour_xi_hom(double lambda, FracOrder alpha, double t, double xi0, const ContourSpec& spec);
double contour_xi_forced(double lambda, FracOrder alpha, double t, const ContourSpec& spec);

/// Y_k of the homogeneous recurrence (Y_0 = xi0) from the integral over the
/// truncated contour {z on the rays : |Im z| <= pi}.
double contour_Yk_hom(double mu, FracOrder alpha, std::size_t k, double xi0, const ContourSpec& spec);

/// Y_k of the forced recurrence (Y_0 = 0, right-hand side tau).
double contour_Yk_forced(double mu, FracOrder alpha, std::size_t k, double tau, const ContourSpec& spec);

}  // namespace fracwave
