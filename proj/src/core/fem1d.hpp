#pragma once

// Continuous piecewise-linear elements on a uniform grid of (0, 1) with
// homogeneous Dirichlet conditions. Vectors hold values at the M-1 interior
// nodes.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "core/grid.hpp"

namespace fracwave {

using FemFunction = std::vector<double>;

/// Symmetric tridiagonal matrix: diag has N entries, off has N-1.
struct TriDiagMatrix {
    std::vector<double> diag;
    std::vector<double> off;

    [[nodiscard]] std::size_t size() const noexcept { return diag.size(); }

    /// y = T x
    void apply(std::span<const double> x, std::span<double> y) const;
    [[nodiscard]] std::vector<double> apply(std::span<const double> x) const;

    /// x^T T y
    [[nodiscard]] double bilinear(std::span<const double> x, std::span<const double> y) const;
};

TriDiagMatrix assemble_mass(const SpaceGrid1D& grid);
TriDiagMatrix assemble_stiffness(const SpaceGrid1D& grid);

/// Root-free LDL^T factorization of an SPD tridiagonal matrix, reusable
/// across right-hand sides.
class TriDiagFactor {
public:
    /// Throws NumericError when a pivot is not positive (matrix not SPD).
    explicit TriDiagFactor(const TriDiagMatrix& T);

    void solve_in_place(std::span<double> x) const;
    [[nodiscard]] std::vector<double> solve(std::span<const double> rhs) const;
    [[nodiscard]] std::size_t size() const noexcept { return d_.size(); }

private:
    std::vector<double> d_;  // pivots
    std::vector<double> l_;  // subdiagonal multipliers
};

std::vector<double> solve_spd_tridiag(const TriDiagMatrix& T, std::span<const double> rhs);

/// Spatial data on (0, 1): zero, x^p with p > -1/2, or a smooth callable.
class SpatialFunctionSpec {
public:
    enum class Kind { zero, power, smooth };

    static SpatialFunctionSpec zero();
    /// x^p scaled by `scale`; throws DomainError when p <= -1/2.
    static SpatialFunctionSpec power(double p, double scale = 1.0);
    /// Callable with a known L2(0,1) norm (pass a negative norm to have it computed).
    static SpatialFunctionSpec smooth(std::function<double(double)> f, std::string label, double l2_norm = -1.0);
    /// sqrt(2) sin(n pi x), the n-th Dirichlet eigenfunction.
    static SpatialFunctionSpec sine_mode(int n);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double exponent() const noexcept { return p_; }
    [[nodiscard]] double scale() const noexcept { return scale_; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }

    [[nodiscard]] double operator()(double x) const;
    /// ||f||_{L2(0,1)}
    [[nodiscard]] double l2_norm() const;

private:
    Kind kind_ = Kind::zero;
    double p_ = 0.0;
    double scale_ = 0.0;
    double norm_ = 0.0;
    std::function<double(double)> fn_;
    std::string label_ = "zero";
};

/// load_i = integral of f * phi_i over (0, 1).
///
/// Power data: the element touching x = 0 uses exact moments of x^p; every
/// other element uses 20-point Gauss-Legendre (x^p is analytic there and the
/// rule is exact to rounding). Smooth data: 5-point Gauss per element.
std::vector<double> load_vector(const SpatialFunctionSpec& f, const SpaceGrid1D& grid);

/// Coefficients of P_h f (solves M c = load).
FemFunction l2_project(const SpatialFunctionSpec& f, const SpaceGrid1D& grid);

struct EigenPair {
    double lambda;
    FemFunction phi;  // M-orthonormal
};

/// All pairs of A phi = lambda M phi, ascending in lambda.
std::vector<EigenPair> discrete_eigenpairs(const SpaceGrid1D& grid);

/// (6/h^2) (1 - cos(n pi h)) / (2 + cos(n pi h))
double discrete_eigenvalue_closed_form(const SpaceGrid1D& grid, int n);

/// sqrt(v^T M v)
double l2_norm(std::span<const double> v, const TriDiagMatrix& mass);

/// ||f - v_h||_{L2(0,1)} for smooth f, by 5-point Gauss per element after
/// splitting each element in `split` pieces.
double l2_distance_smooth(const SpatialFunctionSpec& f, std::span<const double> v, const SpaceGrid1D& grid, int split = 4);

/// Nodal samples of a FEM function on `fine`, which must refine `coarse` dyadically.
FemFunction prolongate(std::span<const double> coarse_values, const SpaceGrid1D& coarse, const SpaceGrid1D& fine);

/// Values at the nodes of `coarse`, a dyadic coarsening of `fine`.
FemFunction restrict_to(std::span<const double> fine_values, const SpaceGrid1D& fine, const SpaceGrid1D& coarse);

}  // namespace fracwave
