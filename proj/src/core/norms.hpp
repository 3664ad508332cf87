#pragma once

// Error norms between a coarse solution U^{m,n} and a finer reference on
// nested dyadic grids, and observed convergence orders.

#include <cstddef>
#include <span>
#include <vector>

#include "core/dg_solver.hpp"

namespace fracwave {

/// How the two spatial grids are brought together before taking L2 norms.
enum class SpatialComparison {
    prolongate,      // coarse FEM function interpolated onto the fine grid (exact L2 of the difference)
    restrict_nodes,  // reference sampled at the coarse nodes, norm on the coarse grid
};

/// ||U_coarse(t) - U_fine(t)||_{L2} on every slab of the fine time grid.
class DifferenceProfile {
public:
    DifferenceProfile(const Trajectory& coarse, const Trajectory& fine,
                      SpatialComparison mode = SpatialComparison::prolongate);

    /// Fine slabs per coarse slab.
    [[nodiscard]] std::size_t ratio() const noexcept { return ratio_; }
    [[nodiscard]] std::size_t coarse_steps() const noexcept { return coarse_steps_; }
    [[nodiscard]] double final_time() const noexcept { return T_; }

    /// Entry k (1..J_fine): difference on fine slab k.
    [[nodiscard]] const std::vector<double>& per_fine_slab() const noexcept { return values_; }

    /// Difference at the left limit of coarse node t_j, j = 1..J_coarse.
    [[nodiscard]] double at_coarse_node(std::size_t j) const;

private:
    std::vector<double> values_;
    std::size_t ratio_;
    std::size_t coarse_steps_;
    double T_;
};

/// Time sampling of the L-infinity(L2) norm: the supremum over (0, T], or the
/// maximum over the left limits at the coarse grid nodes.
enum class TimeSampling { supremum, coarse_left_limits };

double norm_linf_l2(const DifferenceProfile& diff, TimeSampling sampling = TimeSampling::supremum);

/// max_{1<=j<=2^n} (j/2^n)^beta ||v((j/2^n)-)||. The coarse grid must have 2^n
/// slabs (ArgumentError otherwise).
double norm_weighted(const DifferenceProfile& diff, double beta, int n);

/// ||v(T-)||
double norm_final_time(const DifferenceProfile& diff);

/// Norms of a single trajectory, read as a difference already on a common grid.
double norm_linf_l2(const Trajectory& diff);
double norm_weighted(const Trajectory& diff, double beta, int n);

/// log2(e_i / e_{i+1}) for consecutive entries; ArgumentError for fewer than
/// two entries or a non-positive error.
std::vector<double> convergence_order(std::span<const double> errors);

}  // namespace fracwave
