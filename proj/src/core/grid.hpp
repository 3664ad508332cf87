#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "core/errors.hpp"

namespace fracwave {

/// Order of the fractional integral in the memory term, 0 < alpha < 1.
class FracOrder {
public:
    explicit FracOrder(double alpha) : alpha_(alpha)
    {
        if (!(alpha > 0.0 && alpha < 1.0)) {
            throw DomainError("fractional order must satisfy 0 < alpha < 1, got " + std::to_string(alpha));
        }
    }
    [[nodiscard]] double value() const noexcept { return alpha_; }

private:
    double alpha_;
};

/// Uniform partition of (0, 1) into M cells; unknowns live on the M-1 interior nodes.
class SpaceGrid1D {
public:
    explicit SpaceGrid1D(std::size_t cells) : cells_(cells)
    {
        if (cells < 2) {
            throw ArgumentError("space grid needs at least 2 cells");
        }
    }
    static SpaceGrid1D dyadic(int level) { return SpaceGrid1D(std::size_t{1} << level); }

    [[nodiscard]] std::size_t cells() const noexcept { return cells_; }
    [[nodiscard]] std::size_t interior() const noexcept { return cells_ - 1; }
    [[nodiscard]] double h() const noexcept { return 1.0 / static_cast<double>(cells_); }
    [[nodiscard]] double node(std::size_t i) const noexcept { return static_cast<double>(i) / static_cast<double>(cells_); }

    bool operator==(const SpaceGrid1D&) const = default;

private:
    std::size_t cells_;
};

/// Uniform time partition t_j = j*tau of (0, T).
class TimeGrid {
public:
    TimeGrid(double final_time, std::size_t steps) : T_(final_time), J_(steps)
    {
        if (steps < 1) {
            throw ArgumentError("time grid needs at least one step");
        }
        if (!(final_time > 0.0)) {
            throw ArgumentError("final time must be positive");
        }
    }
    static TimeGrid dyadic(int level, double final_time = 1.0) { return TimeGrid(final_time, std::size_t{1} << level); }

    [[nodiscard]] double final_time() const noexcept { return T_; }
    [[nodiscard]] std::size_t steps() const noexcept { return J_; }
    [[nodiscard]] double tau() const noexcept { return T_ / static_cast<double>(J_); }
    [[nodiscard]] double t(std::size_t j) const noexcept { return T_ * static_cast<double>(j) / static_cast<double>(J_); }

    bool operator==(const TimeGrid&) const = default;

private:
    double T_;
    std::size_t J_;
};

}  // namespace fracwave
