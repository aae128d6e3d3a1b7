#include <catch_amalgamated.hpp>

#include "oracles.hpp"

#include <hosc/error.hpp>
#include <hosc/extensions.hpp>
#include <hosc/hermite.hpp>
#include <hosc/ode.hpp>
#include <hosc/series.hpp>

#include <cmath>
#include <numbers>

using namespace hosc;

namespace {

/// |a b' - a' b| / (|(a, b)| |(a', b')|)
double projective_distance(double a, double b, double a2, double b2)
{
    return std::abs(a * b2 - a2 * b) / (std::hypot(a, b) * std::hypot(a2, b2));
}

} // namespace

TEST_CASE("boundary direction at lambda = -1/2 is that of phi_+", "[ode]")
{
    const auto y = build_l2_solution(-0.5, Side::plus, 1e-10);
    CHECK(projective_distance(y.value0, y.dvalue0, std::sqrt(std::numbers::pi) / 2.0, -1.0) < 1e-9);
}

TEST_CASE("ground state direction at lambda = 1/2", "[ode]")
{
    const auto y = build_l2_solution(0.5, Side::plus, 1e-10);
    CHECK(std::abs(y.dvalue0 / y.value0) < 1e-8);
}

TEST_CASE("direction agrees with the series G", "[ode]")
{
    for (double omega : {0.25, 0.5, 1.0, 2.0}) {
        const auto y = build_l2_solution(-omega * omega, Side::plus, 1e-10);
        CHECK(y.dvalue0 / y.value0 == Catch::Approx(-1.0 / eval_G(omega)).epsilon(1e-6));
    }
}

TEST_CASE("direction agrees with the parabolic cylinder ratio", "[ode]")
{
    for (double lambda : {-2.0, 0.0, 0.7, 3.3, 7.9}) {
        const auto y = build_l2_solution(lambda, Side::plus, 1e-10);
        CHECK(projective_distance(y.value0, y.dvalue0, oracle::decay_ratio(lambda), -1.0) < 1e-8);
    }
}

TEST_CASE("projective stability under a longer integration range", "[ode]")
{
    for (double lambda : {-2.0, 0.0, 0.7, 3.3}) {
        const auto a = build_l2_solution(lambda, Side::plus, 1e-10);
        OdeConfig cfg;
        cfg.start_T = 1.25 * a.start_T;
        const auto b = build_l2_solution(lambda, Side::plus, 1e-10, cfg);
        CHECK(projective_distance(a.value0, a.dvalue0, b.value0, b.dvalue0) < 1e-8);
        CHECK(a.error_estimate < 1e-10);
        CHECK((a.value0 != 0.0 || a.dvalue0 != 0.0));
    }
}

TEST_CASE("minus side is the mirror image", "[ode]")
{
    const auto p = build_l2_solution(1.3, Side::plus, 1e-10);
    const auto m = build_l2_solution(1.3, Side::minus, 1e-10);
    CHECK(m.side == Side::minus);
    CHECK(m.value0 == p.value0);
    CHECK(m.dvalue0 == -p.dvalue0);
}

TEST_CASE("tabulated samples solve the ODE and decay", "[ode]")
{
    OdeConfig cfg;
    cfg.tabulate = true;
    for (double lambda : {-1.0, 0.5, 2.2}) {
        const auto y = build_l2_solution(lambda, Side::plus, 1e-10, cfg);
        REQUIRE(y.samples);
        const auto s = side_samples(*y.samples, Side::plus);
        const auto d2 = differentiate(s.d_values, s.step);
        double worst = 0.0;
        for (std::size_t k = 4; k + 4 < s.t.size(); ++k) {
            const double t = s.t[k];
            worst = std::max(worst, std::abs(-0.5 * d2[k] + 0.5 * t * t * s.values[k] - lambda * s.values[k]));
        }
        CHECK(worst / y.samples->sup_norm() < 1e-7);
        CHECK(y.samples->sup_norm() == Catch::Approx(1.0).epsilon(1e-12));

        const std::size_t last = s.t.size() - 1;
        if (s.t[last / 2] > std::sqrt(2.0 * std::max(lambda, 0.0)))
            CHECK(std::abs(s.values[last]) <= std::abs(s.values[last / 2]));
    }

    const auto g = build_l2_solution(0.5, Side::plus, 1e-10, cfg);
    const auto& sm = *g.samples;
    const double scale = sm.boundary.f_plus.real() / psi(0).value(0.0);
    for (std::size_t k = sm.negative_count; k < sm.size(); k += 211)
        CHECK(sm.values[k] == Catch::Approx(scale * psi(0).value(sm.t[k])).margin(1e-9));
}

TEST_CASE("mirror_extend", "[ode]")
{
    OdeConfig cfg;
    cfg.tabulate = true;
    const auto y = build_l2_solution(2.0, Side::plus, 1e-10, cfg);
    const auto m = mirror_extend(y);
    CHECK(m.boundary.f_minus == m.boundary.f_plus);
    CHECK((m.boundary.df_plus - m.boundary.df_minus).real() == Catch::Approx(2.0 * y.dvalue0).epsilon(1e-14));
    CHECK(m.negative_count == m.positive_count());

    // |psi_1| on the line: even, but with a derivative kink, so outside B_{pi/2}.
    const auto odd = build_l2_solution(1.5, Side::plus, 1e-10, cfg);
    const auto kinked = mirror_extend(odd);
    CHECK(boundary_residual(BTheta{std::numbers::pi / 2.0}, kinked.boundary) > 0.1);

    CHECK_THROWS_AS(mirror_extend(build_l2_solution(2.0, Side::plus, 1e-10)), DomainError);
    CHECK_THROWS_AS(mirror_extend(build_l2_solution(2.0, Side::minus, 1e-10, cfg)), DomainError);
}

TEST_CASE("ode argument checks", "[ode]")
{
    CHECK_THROWS_AS(build_l2_solution(1.0, Side::plus, 0.0), DomainError);
    CHECK_THROWS_AS(build_l2_solution(std::nan(""), Side::plus, 1e-10), DomainError);
    OdeConfig cfg;
    cfg.start_T = 1.0;
    CHECK_THROWS_AS(build_l2_solution(8.0, Side::plus, 1e-10, cfg), DomainError);
}
