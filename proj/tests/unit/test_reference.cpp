#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <numbers>
#include <vector>

#include "core/contour.hpp"
#include "core/errors.hpp"
#include "core/reference.hpp"
#include "core/special.hpp"
#include "core/trajectory_io.hpp"

using namespace fracwave;

TEST_CASE("Fourier coefficients of x and of 1")
{
    const auto c1 = fourier_coeffs_power(1.0, 40);
    for (std::size_t n = 1; n <= 40; ++n) {
        const double exact = std::numbers::sqrt2 * (n % 2 == 1 ? 1.0 : -1.0) / (static_cast<double>(n) * std::numbers::pi);
        CHECK(std::abs(c1.coeffs[n - 1] - exact) < 1e-13);
    }
    const auto c0 = fourier_coeffs_power(0.0, 40);
    for (std::size_t n = 1; n <= 40; ++n) {
        const double exact = std::numbers::sqrt2 * (n % 2 == 1 ? 2.0 : 0.0) / (static_cast<double>(n) * std::numbers::pi);
        CHECK(std::abs(c0.coeffs[n - 1] - exact) < 1e-13);
    }
}

TEST_CASE("Fourier coefficients of x^-0.49: closed form against direct quadrature")
{
    const auto c = fourier_coeffs_power(-0.49, 300);
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{7}, std::size_t{40}, std::size_t{300}}) {
        CHECK(std::abs(c.coeffs[n - 1] - fourier_coeff_power_direct(-0.49, n)) < 1e-12);
    }
    // Envelope |c_n| <= C n^{-(p+1)}.
    bool inside = true;
    for (std::size_t n = 1; n <= 300; ++n) {
        inside = inside && std::abs(c.coeffs[n - 1]) <= c.tail_constant * std::pow(static_cast<double>(n), -c.tail_exponent);
    }
    CHECK(inside);
    CHECK(c.tail_exponent == doctest::Approx(0.51));
    CHECK_THROWS_AS(fourier_coeffs_power(-0.5, 10), DomainError);
    CHECK_THROWS_AS(fourier_coeff_power_direct(-0.6, 1), DomainError);
}

TEST_CASE("spectral basis")
{
    CHECK(SpectralBasis::lambda(3) == doctest::Approx(9 * std::numbers::pi * std::numbers::pi));
    CHECK(SpectralBasis::phi(1, 0.5) == doctest::Approx(std::numbers::sqrt2));
}

TEST_CASE("exact homogeneous solution")
{
    const SpaceGrid1D g(16);
    const FracOrder alpha{0.4};

    SUBCASE("single mode")
    {
        SpectralCoefficients one;
        one.coeffs = {1.0, 0.0, 0.0};
        one.tail_constant = 0.0;
        const auto u = exact_hom_solution(one, alpha, 1.0, g);
        const double e = mittag_leffler(1.4, 1.0, -std::numbers::pi * std::numbers::pi).real();
        const double xi = contour_xi_hom(std::numbers::pi * std::numbers::pi, alpha, 1.0, 1.0,
                                         ContourSpec::for_order(alpha));
        CHECK(std::abs(e - xi) < 1e-12);
        for (std::size_t i = 0; i < g.interior(); ++i) {
            CHECK(u.values[i] == doctest::Approx(xi * SpectralBasis::phi(1, g.node(i + 1))).epsilon(1e-11).scale(1.0));
        }
        CHECK(u.tail_bound == 0.0);
    }

    SUBCASE("small t recovers the data")
    {
        const auto c = fourier_coeffs_power(1.0, 4000);
        const auto u = exact_hom_solution(c, alpha, 1e-6, g);
        for (std::size_t i = 0; i < g.interior(); ++i) {
            CHECK(std::abs(u.values[i] - g.node(i + 1)) < 1e-2);
        }
    }

    SUBCASE("tail tolerance")
    {
        const auto c = fourier_coeffs_power(-0.49, 200);
        const auto u = exact_hom_solution(c, alpha, 1.0, g);
        CHECK(u.tail_bound > 0.0);
        CHECK_NOTHROW(exact_hom_solution(c, alpha, 1.0, g, 2.0 * u.tail_bound));
        CHECK_THROWS_AS(exact_hom_solution(c, alpha, 1.0, g, 0.5 * u.tail_bound), NumericError);
        CHECK_THROWS_AS(exact_hom_solution(c, alpha, 0.0, g), DomainError);
    }
}

TEST_CASE("experiment data")
{
    const FracOrder a{0.4};
    const auto d1 = experiment_data(1, a);
    CHECK(d1.u0.exponent() == -0.49);
    CHECK(d1.f.kind() == ForcingSpec::Kind::zero);
    const auto d3 = experiment_data(3, a);
    CHECK(d3.f.kind() == ForcingSpec::Kind::separable);
    CHECK(d3.f.exponent() == -0.49);
    CHECK(d3.f.spatial().exponent() == doctest::Approx(0.4 / 1.4 - 0.49));
    const auto d4 = experiment_data(4, a);
    CHECK(d4.f.exponent() == doctest::Approx(0.41));
    CHECK_THROWS_AS(experiment_data(5, a), ArgumentError);
}

TEST_CASE("reference cache is bit-reproducible")
{
    const auto dir = std::filesystem::temp_directory_path() / "fracwave_test_cache";
    std::filesystem::remove_all(dir);
    ReferenceOptions opt;
    opt.cache_dir = dir;
    const FracOrder a{0.4};
    const auto first = fine_grid_reference(2, a, 5, 6, opt);
    const auto plain = fine_grid_reference(2, a, 5, 6);
    std::size_t files = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        files += e.is_regular_file() ? 1 : 0;
    }
    CHECK(files >= 2);  // dump and manifest
    const auto second = fine_grid_reference(2, a, 5, 6, opt);
    REQUIRE(first.slab_data().size() == second.slab_data().size());
    CHECK(std::memcmp(first.slab_data().data(), second.slab_data().data(), first.slab_data().size_bytes()) == 0);
    CHECK(std::memcmp(first.slab_data().data(), plain.slab_data().data(), plain.slab_data().size_bytes()) == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("restriction to coarser grids")
{
    const auto traj = fine_grid_reference(1, FracOrder{0.2}, 5, 6);
    const auto same = restrict_trajectory(traj, 5, 6);
    CHECK(std::memcmp(same.slab_data().data(), traj.slab_data().data(), traj.slab_data().size_bytes()) == 0);

    // u(x, t) = x + t sampled exactly.
    Trajectory lin(0.5, SpaceGrid1D(16), TimeGrid(1.0, 8));
    for (std::size_t j = 0; j <= 8; ++j) {
        auto v = lin.value(j);
        for (std::size_t i = 0; i < 15; ++i) {
            v[i] = static_cast<double>(i + 1) / 16.0 + static_cast<double>(j) / 8.0;
        }
    }
    const auto r = restrict_trajectory(lin, 2, 2);
    CHECK(r.width() == 3);
    CHECK(r.steps() == 4);
    for (std::size_t j = 1; j <= 4; ++j) {
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(r.value(j)[i] == doctest::Approx(static_cast<double>(i + 1) / 4.0 + static_cast<double>(j) / 4.0));
        }
    }
    CHECK_THROWS_AS(restrict_trajectory(lin, 5, 2), ArgumentError);
    CHECK_THROWS_AS(restrict_trajectory(lin, 2, 4), ArgumentError);
    Trajectory odd(0.5, SpaceGrid1D(16), TimeGrid(1.0, 6));
    CHECK_THROWS_AS(restrict_trajectory(odd, 2, 2), ArgumentError);
}
