#pragma once

// Piecewise-constant-in-time DG scheme with linear elements in space for
//   u' - Laplace D^{-alpha} u = f  on (0,1) x (0,T),  u = 0 on the boundary.
//
// Testing the scheme with V equal to a hat function on the slab I_{k+1} and
// zero elsewhere gives, for U(t) = U_j on I_j,
//   M (U_{k+1} - U_k) + A int_{I_{k+1}} D^{-alpha} U dt = F_{k+1}.
// For piecewise constant U the fractional integral is explicit, and its
// integral over I_{k+1} is tau^{1+alpha} sum_{j<=k+1} U_j (b_{k-j+2} - 2 b_{k-j+1} + b_{k-j})
// (b_0 = 0, and the j = k+1 term is b_1 U_{k+1}). With H_k = sum_{j<=k} w_{k+1-j} U_j:
//   (M + tau^{1+alpha} b_1 A) U_{k+1} = M U_k - tau^{1+alpha} A H_k + F_{k+1},
// with U_0 = P_h u_0 and F_{k+1,i} = int_{I_{k+1}} <f(t), phi_i> dt.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "core/fem1d.hpp"
#include "core/grid.hpp"

namespace fracwave {

/// Right-hand side f(x, t) = X(x) T(t) with T = 0, 1 or t^q (q > -1).
class ForcingSpec {
public:
    enum class Kind { zero, constant, separable };

    static ForcingSpec zero();
    static ForcingSpec constant(SpatialFunctionSpec X);
    /// Throws DomainError when q <= -1.
    static ForcingSpec separable(SpatialFunctionSpec X, double q);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] const SpatialFunctionSpec& spatial() const noexcept { return X_; }
    [[nodiscard]] double exponent() const noexcept { return q_; }

    /// integral of T(t) over slab k of the grid (k = 1..J).
    [[nodiscard]] double time_factor(const TimeGrid& grid, std::size_t k) const;

    /// ||f||_{L1(0,T; L2(0,1))}
    [[nodiscard]] double l1_l2_norm(double T) const;

private:
    Kind kind_ = Kind::zero;
    SpatialFunctionSpec X_ = SpatialFunctionSpec::zero();
    double q_ = 0.0;
};

enum class HistoryMode { naive, fft_blocked };

struct SolverConfig {
    HistoryMode history_mode = HistoryMode::fft_blocked;
    /// When false, only U_0 and U_J are kept in the result (the run itself
    /// still needs every slab for the memory term).
    bool store_full_history = true;
    /// Relative residual accepted from each per-slab solve before one step of
    /// iterative refinement is applied.
    double linear_solve_tol = 1e-12;
};

/// Numerical solution: U_0 = P_h u_0 and the slab values U_1..U_J.
class Trajectory {
public:
    Trajectory(double alpha, SpaceGrid1D sgrid, TimeGrid tgrid);

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] const SpaceGrid1D& space() const noexcept { return sgrid_; }
    [[nodiscard]] const TimeGrid& time() const noexcept { return tgrid_; }
    [[nodiscard]] std::size_t width() const noexcept { return sgrid_.interior(); }
    [[nodiscard]] std::size_t steps() const noexcept { return tgrid_.steps(); }
    [[nodiscard]] bool full() const noexcept { return full_; }

    /// j = 0 gives U_0; j = 1..J the slab values (left limit at t_j).
    [[nodiscard]] std::span<const double> value(std::size_t j) const;
    [[nodiscard]] std::span<double> value(std::size_t j);

    /// ||U_j||_{L2}, j = 0..J (available even when slabs were dropped).
    [[nodiscard]] const std::vector<double>& norms() const noexcept { return norms_; }

    /// Contiguous U_1..U_J (empty when not stored).
    [[nodiscard]] std::span<const double> slab_data() const noexcept { return slabs_; }
    [[nodiscard]] std::span<double> slab_data() noexcept { return slabs_; }
    [[nodiscard]] std::span<const double> initial() const noexcept { return u0h_; }
    [[nodiscard]] std::span<double> initial() noexcept { return u0h_; }

    void set_norms(std::vector<double> norms) { norms_ = std::move(norms); }
    /// Keep U_J only.
    void drop_history();

private:
    double alpha_;
    SpaceGrid1D sgrid_;
    TimeGrid tgrid_;
    std::vector<double> u0h_;
    std::vector<double> slabs_;
    std::vector<double> last_;
    std::vector<double> norms_;
    bool full_ = true;
};

/// Forcing already reduced to a spatial load vector (<X, phi_i>) and a time profile.
struct DiscreteForcing {
    std::vector<double> load;
    ForcingSpec time_profile;  // only its kind and exponent are used
};

/// F_k = time_factor(k) * load(X).
std::vector<double> rhs_load(const ForcingSpec& f, const SpaceGrid1D& sgrid, const TimeGrid& tgrid, std::size_t k);

/// Full scheme from continuous data.
Trajectory run(const SpatialFunctionSpec& u0, const ForcingSpec& f, const SpaceGrid1D& sgrid, const TimeGrid& tgrid,
               FracOrder alpha, const SolverConfig& config = {});

/// Full scheme from a discrete initial value U_0 and a discrete load.
Trajectory run_discrete(std::span<const double> u0h, const DiscreteForcing& f, const SpaceGrid1D& sgrid,
                        const TimeGrid& tgrid, FracOrder alpha, const SolverConfig& config = {});

/// sqrt(2) ||u_0|| + 2 ||f||_{L1(L2)}
double stability_bound(const SpatialFunctionSpec& u0, const ForcingSpec& f, double T);

}  // namespace fracwave
