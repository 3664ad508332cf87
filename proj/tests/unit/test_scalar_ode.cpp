#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/contour.hpp"
#include "core/kernel.hpp"
#include "core/scalar_ode.hpp"

using namespace fracwave;
using namespace fracwave::ode;

TEST_CASE("mu = 0: constant and linear trajectories")
{
    const ScalarProblem p(FracOrder{0.4}, 0.0, 0.125, 3.0);
    CHECK(p.mu() == 0.0);
    const auto hom = step_hom(p, 8);
    const auto forced = step_forced(p, 8);
    REQUIRE(hom.y.size() == 9);
    for (std::size_t k = 0; k <= 8; ++k) {
        CHECK(hom.y[k] == 3.0);
        CHECK(forced.y[k] == doctest::Approx(0.125 * static_cast<double>(k)).epsilon(1e-15));
    }
}

TEST_CASE("mu is lambda tau^(1+alpha)")
{
    const ScalarProblem p(FracOrder{0.5}, 7.0, 0.25);
    CHECK(p.mu() == doctest::Approx(7.0 * 0.125).epsilon(1e-15));
    const auto q = ScalarProblem::from_mu(FracOrder{0.5}, 2.5, 4.0);
    CHECK(q.tau == 1.0);
    CHECK(q.mu() == 2.5);
    CHECK(q.xi0 == 4.0);
}

TEST_CASE("first step closed form")
{
    const FracOrder alpha{0.6};
    const double b1 = conv_weights(alpha, 2).b(1);
    for (double mu : {0.01, 1.0, 1e4}) {
        const auto p = ScalarProblem::from_mu(alpha, mu);
        CHECK(step_hom(p, 1).y[1] == doctest::Approx(1.0 / (1.0 + mu * b1)).epsilon(1e-15));
        CHECK(step_forced(p, 1).y[1] == doctest::Approx(1.0 / (1.0 + mu * b1)).epsilon(1e-15));
    }
}

TEST_CASE("hand-unrolled recurrences")
{
    // 40-digit evaluation of the recurrence.
    const auto a = step_hom(ScalarProblem::from_mu(FracOrder{0.5}, 1.0), 3);
    CHECK(a.y[1] == doctest::Approx(0.57069391615121242329).epsilon(1e-14));
    CHECK(a.y[2] == doctest::Approx(0.12272493681530919805).epsilon(1e-14));
    CHECK(a.y[3] == doctest::Approx(-0.10573793297449829999).epsilon(1e-14));

    const auto b = step_hom(ScalarProblem::from_mu(FracOrder{0.3}, 1.0), 4);
    CHECK(b.y[2] == doctest::Approx(0.17506320142531851807).epsilon(1e-14));
    CHECK(b.y[3] == doctest::Approx(-0.0043674339036946850102).epsilon(1e-12));
    CHECK(b.y[4] == doctest::Approx(-0.066777991631627460622).epsilon(1e-14));

    const auto c = step_forced(ScalarProblem::from_mu(FracOrder{0.3}, 1.0), 4);
    CHECK(c.y[1] == doctest::Approx(0.53847117487059578012).epsilon(1e-14));
    CHECK(c.y[2] == doctest::Approx(0.71353437629591429819).epsilon(1e-14));
    CHECK(c.y[3] == doctest::Approx(0.70916694239221961318).epsilon(1e-14));
    CHECK(c.y[4] == doctest::Approx(0.64238895076059215256).epsilon(1e-14));
}

TEST_CASE("linearity in the initial value and in tau")
{
    const FracOrder alpha{0.7};
    const auto one = step_hom(ScalarProblem::from_mu(alpha, 3.0, 1.0), 50);
    const auto two = step_hom(ScalarProblem::from_mu(alpha, 3.0, -2.5), 50);
    for (std::size_t k = 0; k <= 50; ++k) {
        CHECK(two.y[k] == doctest::Approx(-2.5 * one.y[k]).epsilon(1e-13).scale(1.0));
    }
    // Forced: Y_k scales with tau once mu is held fixed.
    const double tau = 0.01;
    const double lambda = 3.0 / std::pow(tau, 1.7);
    const auto scaled = step_forced(ScalarProblem(alpha, lambda, tau), 50);
    const auto unit = step_forced(ScalarProblem::from_mu(alpha, 3.0), 50);
    for (std::size_t k = 0; k <= 50; ++k) {
        CHECK(scaled.y[k] == doctest::Approx(tau * unit.y[k]).epsilon(1e-12).scale(tau));
    }
}

TEST_CASE("homogeneous trajectories stay bounded by the initial value")
{
    for (double alpha : {0.1, 0.5, 0.9}) {
        for (double mu : {1e-3, 0.3, 10.0, 1e5}) {
            const auto y = step_hom(ScalarProblem::from_mu(FracOrder{alpha}, mu), 2000).y;
            double top = 0.0;
            for (double v : y) {
                top = std::max(top, std::abs(v));
            }
            CHECK(top <= 1.0 + 1e-14);
        }
    }
}

TEST_CASE("jump decay does not grow with K")
{
    for (double alpha : {0.2, 0.8}) {
        for (double mu : {0.1, 10.0, 1e3}) {
            const auto p = ScalarProblem::from_mu(FracOrder{alpha}, mu);
            const auto small = verify_jump_decay(p, 1024);
            const auto large = verify_jump_decay(p, 8192);
            CHECK(std::isfinite(large.sup_k_ge2));
            CHECK(large.sup_k_ge2 <= 1.1 * small.sup_k_ge2 + 1e-14);
            CHECK(large.at_k1 == small.at_k1);
            CHECK(large.sup_k_ge2 < 2.0);
        }
    }
}

TEST_CASE("error profile: contour and Mittag-Leffler sources agree")
{
    const FracOrder alpha{0.5};
    const auto spec = ContourSpec::for_order(alpha);
    const ScalarProblem p(alpha, 40.0, 1.0 / 64.0);
    for (Mode mode : {Mode::homogeneous, Mode::forced}) {
        const auto a = error_profile(p, 64, mode, spec, ExactSource::contour);
        const auto b = error_profile(p, 64, mode, spec, ExactSource::mittag_leffler);
        REQUIRE(a.size() == 65);
        for (std::size_t k = 1; k <= 64; ++k) {
            CHECK(std::abs(a[k] - b[k]) < 1e-8);
        }
    }
}

TEST_CASE("normalized errors stay bounded as K doubles")
{
    const FracOrder alpha{0.3};
    const auto spec = ContourSpec::for_order(alpha);
    for (Mode mode : {Mode::homogeneous, Mode::forced}) {
        for (double mu : {0.05, 5.0}) {
            const auto p = ScalarProblem::from_mu(alpha, mu);
            const auto e = error_profile(p, 4096, mode, spec, ExactSource::mittag_leffler);
            const auto sup = prefix_sup(e);
            CHECK(sup[4096] <= 1.1 * sup[2048] + 1e-12);
            CHECK(sup[2048] <= 1.1 * sup[1024] + 1e-12);
            const auto report = verify_error_decay(p, 4096, mode, spec, ExactSource::mittag_leffler);
            CHECK(report.sup == doctest::Approx(sup[4096]).epsilon(1e-15));
            CHECK(report.argmax >= 1);
            CHECK(report.argmax <= 4096);
        }
    }
}

TEST_CASE("prefix sup")
{
    const std::vector<double> e{0.0, 1.0, 3.0, 2.0, 5.0};
    const auto s = prefix_sup(e);
    CHECK(s[1] == 1.0);
    CHECK(s[2] == 3.0);
    CHECK(s[3] == 3.0);
    CHECK(s[4] == 5.0);
}
