#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "core/errors.hpp"
#include "core/fem1d.hpp"

using namespace fracwave;

namespace {

double hat(double x, std::size_t k, double h)
{
    return std::max(0.0, 1.0 - std::abs(x / h - static_cast<double>(k)));
}

std::vector<double> nodal(const SpaceGrid1D& g, double (*f)(double))
{
    std::vector<double> v(g.interior());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = f(g.node(i + 1));
    }
    return v;
}

double sin_pi(double x)
{
    return std::sin(std::numbers::pi * x);
}

double norm2(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("mass matrix")
{
    const SpaceGrid1D g(4);
    const auto M = assemble_mass(g);
    const double h = g.h();
    REQUIRE(M.size() == 3);
    for (double d : M.diag) {
        CHECK(d == doctest::Approx(4 * h / 6).epsilon(1e-15));
    }
    for (double o : M.off) {
        CHECK(o == doctest::Approx(h / 6).epsilon(1e-15));
    }
    // Row sum of the middle row.
    CHECK(M.off[0] + M.diag[1] + M.off[1] == doctest::Approx(h).epsilon(1e-15));

    const SpaceGrid1D fine(64);
    const auto Mf = assemble_mass(fine);
    const auto s = nodal(fine, sin_pi);
    CHECK(std::abs(Mf.bilinear(s, s) - 0.5) < 2.0 * fine.h() * fine.h());
}

TEST_CASE("stiffness matrix")
{
    const SpaceGrid1D g(4);
    const auto A = assemble_stiffness(g);
    for (double d : A.diag) {
        CHECK(d == doctest::Approx(2 / g.h()).epsilon(1e-15));
    }
    for (double o : A.off) {
        CHECK(o == doctest::Approx(-1 / g.h()).epsilon(1e-15));
    }
    // A applied to x(1-x) equals the load of the constant 2.
    const SpaceGrid1D f(32);
    const auto Af = assemble_stiffness(f);
    const auto u = nodal(f, [](double x) { return x * (1 - x); });
    const auto Au = Af.apply(u);
    const auto load = load_vector(SpatialFunctionSpec::smooth([](double) { return 2.0; }, "two", 2.0), f);
    for (std::size_t i = 0; i < Au.size(); ++i) {
        CHECK(Au[i] == doctest::Approx(load[i]).epsilon(1e-12));
    }
    // Smallest generalized eigenvalue at M = 128.
    const auto pairs = discrete_eigenpairs(SpaceGrid1D(128));
    CHECK(std::abs(pairs.front().lambda / (std::numbers::pi * std::numbers::pi) - 1.0) < 1e-3);
}

TEST_CASE("tridiagonal SPD solve")
{
    TriDiagMatrix I{{3.0, 3.0, 3.0}, {0.0, 0.0}};
    const std::vector<double> rhs{3.0, 6.0, -9.0};
    const auto x = solve_spd_tridiag(I, rhs);
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(2.0));
    CHECK(x[2] == doctest::Approx(-3.0));

    // [2 1; 1 2] x = (3, 3) -> (1, 1).
    TriDiagMatrix T{{2.0, 2.0}, {1.0}};
    const auto y = solve_spd_tridiag(T, std::vector<double>{3.0, 3.0});
    CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(y[1] == doctest::Approx(1.0).epsilon(1e-15));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TriDiagMatrix R;
    R.diag.resize(100);
    R.off.resize(99);
    for (auto& o : R.off) {
        o = u(rng);
    }
    for (auto& d : R.diag) {
        d = 2.5 + u(rng);
    }
    std::vector<double> b(100);
    for (auto& v : b) {
        v = u(rng);
    }
    const TriDiagFactor F(R);
    const auto z = F.solve(b);
    auto r = R.apply(z);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] -= b[i];
    }
    CHECK(norm2(r) <= 1e-12 * norm2(b));

    TriDiagMatrix bad{{1.0, -1.0}, {0.0}};
    CHECK_THROWS_AS(TriDiagFactor{bad}, NumericError);
}

TEST_CASE("projection of a hat function is a unit vector")
{
    const SpaceGrid1D g(8);
    const double h = g.h();
    for (std::size_t k = 1; k <= 7; ++k) {
        const auto spec = SpatialFunctionSpec::smooth([k, h](double x) { return hat(x, k, h); }, "hat");
        const auto c = l2_project(spec, g);
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK(c[i] == doctest::Approx(i + 1 == k ? 1.0 : 0.0).epsilon(1e-13).scale(1.0));
        }
    }
}

TEST_CASE("singular load moments are exact")
{
    const auto load = load_vector(SpatialFunctionSpec::power(-0.49), SpaceGrid1D(8));
    // Antiderivatives of x^p (a + b x), 40 digits.
    CHECK(load[0] == doctest::Approx(0.38135043557706377555).epsilon(1e-14));
    CHECK(load[1] == doctest::Approx(0.25061467432292540903).epsilon(1e-14));
    CHECK_THROWS_AS(SpatialFunctionSpec::power(-0.5), DomainError);
    CHECK_THROWS_AS(SpatialFunctionSpec::power(-0.7), DomainError);
}

TEST_CASE("projection error of sin(pi x) is second order")
{
    const auto f = SpatialFunctionSpec::smooth(sin_pi, "sin", std::sqrt(0.5));
    std::vector<double> err;
    for (int m = 3; m <= 7; ++m) {
        const auto g = SpaceGrid1D::dyadic(m);
        err.push_back(l2_distance_smooth(f, l2_project(f, g), g));
    }
    for (std::size_t i = 1; i < err.size(); ++i) {
        CHECK(std::log2(err[i - 1] / err[i]) == doctest::Approx(2.0).epsilon(0.03));
    }
}

TEST_CASE("discrete eigenpairs")
{
    const auto one = discrete_eigenpairs(SpaceGrid1D(2));
    REQUIRE(one.size() == 1);
    CHECK(one[0].lambda == doctest::Approx(12.0).epsilon(1e-13));

    for (std::size_t M : {std::size_t{16}, std::size_t{128}, std::size_t{512}}) {
        const SpaceGrid1D g(M);
        const auto pairs = discrete_eigenpairs(g);
        double worst = 0.0;
        bool ascending = true;
        for (std::size_t n = 0; n < pairs.size(); ++n) {
            const double exact = discrete_eigenvalue_closed_form(g, static_cast<int>(n + 1));
            worst = std::max(worst, std::abs(pairs[n].lambda - exact) / exact);
            if (n > 0) {
                ascending = ascending && pairs[n].lambda > pairs[n - 1].lambda;
            }
        }
        CHECK(worst < 1e-10);
        CHECK(ascending);
    }

    const SpaceGrid1D g(32);
    const auto pairs = discrete_eigenpairs(g);
    const auto M = assemble_mass(g);
    double worst = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            const double ip = M.bilinear(pairs[i].phi, pairs[j].phi);
            worst = std::max(worst, std::abs(ip - (i == j ? 1.0 : 0.0)));
        }
    }
    CHECK(worst < 1e-12);

    const SpaceGrid1D fine(256);
    for (int n = 1; n <= 5; ++n) {
        const double limit = n * n * std::numbers::pi * std::numbers::pi;
        CHECK(std::abs(discrete_eigenvalue_closed_form(fine, n) / limit - 1.0) < 1e-2);
    }
}

TEST_CASE("L2 norms of FEM functions")
{
    const SpaceGrid1D g(16);
    const auto M = assemble_mass(g);
    CHECK(l2_norm(std::vector<double>(15, 0.0), M) == 0.0);
    std::vector<double> e(15, 0.0);
    e[6] = 1.0;
    CHECK(l2_norm(e, M) == doctest::Approx(std::sqrt(2 * g.h() / 3)).epsilon(1e-15));

    const SpaceGrid1D f(128);
    const auto s = nodal(f, sin_pi);
    CHECK(std::abs(l2_norm(s, assemble_mass(f)) - std::sqrt(0.5)) < f.h() * f.h());
}

TEST_CASE("projection is idempotent on FEM functions")
{
    const SpaceGrid1D g(16);
    const auto c = l2_project(SpatialFunctionSpec::power(-0.49), g);
    // Interpolant of the coefficient vector as a smooth callable.
    const auto as_fn = SpatialFunctionSpec::smooth(
        [c, &g](double x) {
            const double s = x * static_cast<double>(g.cells());
            const auto i = std::min(static_cast<std::size_t>(s), g.cells() - 1);
            const double left = i == 0 ? 0.0 : c[i - 1];
            const double right = i + 1 == g.cells() ? 0.0 : c[i];
            return left + (s - static_cast<double>(i)) * (right - left);
        },
        "interpolant");
    const auto again = l2_project(as_fn, g);
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(again[i] == doctest::Approx(c[i]).epsilon(1e-13));
    }
}

TEST_CASE("prolongation and restriction")
{
    const SpaceGrid1D coarse(4);
    const SpaceGrid1D fine(16);
    const std::vector<double> v{1.0, 2.0, -1.0};
    const auto p = prolongate(v, coarse, fine);
    REQUIRE(p.size() == 15);
    CHECK(p[3] == 1.0);
    CHECK(p[1] == doctest::Approx(0.5));
    CHECK(p[5] == doctest::Approx(1.5));
    const auto r = restrict_to(p, fine, coarse);
    CHECK(r == v);
    CHECK_THROWS_AS(prolongate(v, coarse, SpaceGrid1D(6)), ArgumentError);
    CHECK_THROWS_AS(restrict_to(p, fine, SpaceGrid1D(3)), ArgumentError);
}

TEST_CASE("sine mode data")
{
    const auto s = SpatialFunctionSpec::sine_mode(3);
    CHECK(s.l2_norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s(0.5) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
    CHECK(SpatialFunctionSpec::power(1.0, 2.0).l2_norm() == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(SpatialFunctionSpec::zero().l2_norm() == 0.0);
}
