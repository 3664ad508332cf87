#pragma once

// Ground truth for the convergence studies: the eigenfunction expansion of the
// homogeneous problem and fine-grid self-convergence references.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "core/dg_solver.hpp"
#include "core/fem1d.hpp"
#include "core/grid.hpp"

namespace fracwave {

/// Dirichlet eigenpairs of -d^2/dx^2 on (0, 1): lambda_n = n^2 pi^2, phi_n = sqrt(2) sin(n pi x).
struct SpectralBasis {
    std::size_t n_max;

    [[nodiscard]] static double lambda(std::size_t n);
    [[nodiscard]] static double phi(std::size_t n, double x);
};

/// c_n = <u_0, phi_n> for n = 1..n_max (coeffs[n-1]), plus an envelope
/// |c_n| <= tail_constant * n^(-tail_exponent) valid beyond n_max.
struct SpectralCoefficients {
    std::vector<double> coeffs;
    double tail_constant = 0.0;
    double tail_exponent = 1.0;
};

/// Coefficients of u_0 = x^p, p > -1/2.
///
/// Each c_n = sqrt(2) Im int_0^1 x^p e^{i w x} dx (w = n pi) is split into the
/// closed form Gamma(p+1) e^{i pi (p+1)/2} w^{-(p+1)} of the integral over
/// (0, inf) minus the tail over (1, inf), which is rotated onto x = 1 + iy
/// where it decays like e^{-w y} and is integrated by adaptive Gauss-Legendre.
SpectralCoefficients fourier_coeffs_power(double p, std::size_t n_max);

/// Direct composite quadrature of sqrt(2) int_0^1 x^p sin(n pi x) dx with
/// panels graded geometrically toward x = 0 (slow; used as a cross-check).
double fourier_coeff_power_direct(double p, std::size_t n);

struct HomSolution {
    std::vector<double> values;  // at the interior nodes of the grid
    double tail_bound = 0.0;     // sup-norm estimate of the dropped modes
};

/// u(t) = sum_n c_n E_{1+alpha,1}(-lambda_n t^{1+alpha}) phi_n sampled at the
/// grid nodes. The tail estimate uses |E_{1+alpha,1}(-s)| <= 1/(1+s) and the
/// coefficient envelope. Throws NumericError when it exceeds `tol` (tol > 0).
HomSolution exact_hom_solution(const SpectralCoefficients& c, FracOrder alpha, double t, const SpaceGrid1D& sgrid,
                               double tol = 0.0);

/// Data of the four convergence experiments on (0,1) x (0,1):
///   1: u_0 = x^{-0.49}, f = 0
///   2: u_0 = 0, f = x^{-0.49}
///   3: u_0 = 0, f = x^{alpha/(alpha+1) - 0.49} t^{-0.49}
///   4: u_0 = 0, f = x^{-0.49} t^{alpha + 0.01}
struct ExperimentData {
    SpatialFunctionSpec u0;
    ForcingSpec f;
};

ExperimentData experiment_data(int id, FracOrder alpha);

struct ReferenceOptions {
    std::optional<std::filesystem::path> cache_dir;
    SolverConfig config{};
};

/// U^{ref_m, ref_n} of experiment `id`, read from the cache when a matching
/// dump with a valid manifest exists, otherwise computed (and cached).
Trajectory fine_grid_reference(int id, FracOrder alpha, int ref_m, int ref_n, const ReferenceOptions& options = {});

/// Values of `fine` at the nodes of a 2^-m grid and at the right endpoints
/// t_j of a 2^-n time grid (left limits). Throws ArgumentError unless both
/// grids nest in the fine ones.
Trajectory restrict_trajectory(const Trajectory& fine, int m, int n);

}  // namespace fracwave
