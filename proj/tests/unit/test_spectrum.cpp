#include <catch_amalgamated.hpp>

#include "oracles.hpp"

#include <hosc/error.hpp>
#include <hosc/ode.hpp>
#include <hosc/series.hpp>
#include <hosc/spectrum.hpp>

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace hosc;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> lambdas(const EigenSearch& s)
{
    std::vector<double> out;
    for (const auto& e : s.eigenvalues) out.push_back(e.lambda);
    return out;
}

void check_spectrum(const EigenSearch& s, const std::vector<double>& expected, double tol)
{
    REQUIRE(s.eigenvalues.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(std::abs(s.eigenvalues[i].lambda - expected[i]) < tol);
        CHECK(s.eigenvalues[i].bracket.first <= s.eigenvalues[i].lambda);
        CHECK(s.eigenvalues[i].lambda <= s.eigenvalues[i].bracket.second);
    }
}

/// Lowest even eigenvalue of BTheta for coupling c from decay_ratio(lambda) = -1/c
/// (and the poles lambda = 1/2 + 2n at c = 0).
double even_oracle(double c)
{
    if (c == 0.0) return 0.5;
    const auto f = [c](double l) { return oracle::decay_ratio(l) + 1.0 / c; };
    const double lo = c > 0.0 ? 0.5 + 1e-12 : -40.0;
    const double hi = c > 0.0 ? 1.5 - 1e-12 : 0.5 - 1e-12;
    const auto r = boost::math::tools::bisect(f, lo, hi, boost::math::tools::eps_tolerance<double>(50));
    return 0.5 * (r.first + r.second);
}

} // namespace

TEST_CASE("secular function vanishes at known eigenvalues", "[spectrum]")
{
    CHECK(std::abs(secular(HalfLine{Side::plus, 0.0}, 1.5).det_value) < 1e-8);
    CHECK(std::abs(secular(HalfLine{Side::plus, kPi / 2.0}, 0.5).det_value) < 1e-8);
    CHECK(std::abs(secular(HalfLine{Side::plus, 0.0}, 1.0).det_value) > 1e-2);

    for (double omega : {0.5, 1.0, 2.0}) {
        const double theta = kPi - std::atan(eval_G(omega) / std::sqrt(2.0));
        CHECK(std::abs(secular(BTheta{theta}, -omega * omega).det_value) < 1e-8);
        CHECK(std::abs(secular(BTheta{theta - 0.1}, -omega * omega).det_value) > 1e-3);
    }

    const auto s = secular(CK{0.3, 0.8, 0.1, -0.4}, 1.7);
    CHECK(s.imag_defect < 1e-10);
    CHECK(s.sectors.size() == 1);
}

TEST_CASE("free oscillator and half-line spectra", "[spectrum]")
{
    std::vector<double> free;
    for (int n = 0; n <= 9; ++n) free.push_back(n + 0.5);
    check_spectrum(eigenvalues_in(BTheta{kPi / 2.0}, 0.0, 10.0), free, 1e-6);

    check_spectrum(eigenvalues_in(HalfLine{Side::plus, 0.0}, 0.0, 8.0), {1.5, 3.5, 5.5, 7.5}, 1e-6);
    check_spectrum(eigenvalues_in(HalfLine{Side::plus, kPi / 2.0}, 0.0, 7.0), {0.5, 2.5, 4.5, 6.5}, 1e-6);
    check_spectrum(eigenvalues_in(ck_from_special(SpecialCase::classical), 0.0, 6.0),
                   {0.5, 1.5, 2.5, 3.5, 4.5, 5.5}, 1e-6);
    for (const auto& e : eigenvalues_in(BTheta{kPi / 2.0}, 0.0, 10.0).eigenvalues) {
        CHECK(e.multiplicity == 1);
        CHECK(e.method == Method::secular_root);
        CHECK(e.residual < 1e-8);
    }
}

TEST_CASE("odd eigenvalues are unaffected by the coupling", "[spectrum]")
{
    for (double theta : {0.2, 0.3, 1.0, 2.5}) {
        const auto found = lambdas(eigenvalues_in(BTheta{theta}, -1.0, 6.0));
        for (double target : {1.5, 3.5, 5.5}) {
            double best = 1.0;
            for (double l : found) best = std::min(best, std::abs(l - target));
            CHECK(best < 1e-6);
        }
    }
}

TEST_CASE("doubly degenerate eigenvalues are reported with multiplicity 2", "[spectrum]")
{
    const auto dirichlet = eigenvalues_in(BTheta{0.0}, 0.0, 6.0);
    check_spectrum(dirichlet, {1.5, 3.5, 5.5}, 1e-6);
    for (const auto& e : dirichlet.eigenvalues) CHECK(e.multiplicity == 2);

    const auto hard = eigenvalues_in(ck_from_special(SpecialCase::delta, kPi / 2.0), 0.0, 6.0);
    check_spectrum(hard, {1.5, 3.5, 5.5}, 1e-6);
    for (const auto& e : hard.eigenvalues) CHECK(e.multiplicity == 2);
}

TEST_CASE("CK delta family reproduces BTheta spectra", "[spectrum]")
{
    for (double alpha : {0.4, 1.0, 2.3}) {
        const auto ck = lambdas(eigenvalues_in(ck_from_special(SpecialCase::delta, alpha), -20.0, 6.0));
        const auto bt = lambdas(eigenvalues_in(btheta_from_coupling(-std::tan(alpha)), -20.0, 6.0));
        REQUIRE(ck.size() == bt.size());
        for (std::size_t i = 0; i < ck.size(); ++i) CHECK(std::abs(ck[i] - bt[i]) < 1e-7);
    }
}

TEST_CASE("half-line spectra are invariant under the symmetry map", "[spectrum]")
{
    for (double theta : {0.0, 0.7, 2.6}) {
        const auto [t2, s2] = symmetry_map(theta, Side::plus);
        const auto a = lambdas(eigenvalues_in(HalfLine{Side::plus, theta}, -10.0, 8.0));
        const auto b = lambdas(eigenvalues_in(HalfLine{s2, t2}, -10.0, 8.0));
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-8);
    }
}

TEST_CASE("negative eigenvalue by G inversion", "[spectrum]")
{
    CHECK_FALSE(negative_eigenvalue(kPi / 2.0).has_value());
    CHECK_FALSE(negative_eigenvalue(kPi - alpha_B() - 1e-3).has_value());

    const auto zero = negative_eigenvalue(kPi - alpha_B());
    REQUIRE(zero.has_value());
    CHECK(std::abs(zero->lambda) < 1e-12);

    for (double omega : {0.5, 1.0, 2.0}) {
        const double theta = kPi - std::atan(eval_G(omega) / std::sqrt(2.0));
        const auto inv = negative_eigenvalue(theta);
        REQUIRE(inv.has_value());
        CHECK(inv->method == Method::g_omega_inversion);
        CHECK(std::abs(inv->lambda + omega * omega) < 1e-6);
        const auto roots = eigenvalues_in(BTheta{theta}, -omega * omega - 1.0, 0.0);
        REQUIRE(roots.eigenvalues.size() == 1);
        CHECK(std::abs(roots.eigenvalues[0].lambda - inv->lambda) < 1e-6);
        CHECK(std::abs(secular(BTheta{theta}, inv->lambda).det_value) < 1e-8);
    }
    CHECK_THROWS_AS(negative_eigenvalue(kPi - 1e-5), NumericError);
}

TEST_CASE("half-line negative eigenvalues", "[spectrum]")
{
    const auto plus0 = negative_eigenvalue_halfline(kPi - alpha_A(), Side::plus);
    REQUIRE(plus0.has_value());
    CHECK(std::abs(plus0->lambda) < 1e-12);
    const auto minus0 = negative_eigenvalue_halfline(alpha_A(), Side::minus);
    REQUIRE(minus0.has_value());
    CHECK(std::abs(minus0->lambda) < 1e-12);
    CHECK_FALSE(negative_eigenvalue_halfline(kPi / 2.0, Side::plus).has_value());

    for (double theta : {2.3, 2.8, 3.0}) {
        const auto p = negative_eigenvalue_halfline(theta, Side::plus);
        const auto m = negative_eigenvalue_halfline(kPi - theta, Side::minus);
        REQUIRE(p.has_value());
        REQUIRE(m.has_value());
        CHECK(p->lambda == Catch::Approx(m->lambda).epsilon(1e-12));
        CHECK(std::abs(secular(HalfLine{Side::plus, theta}, p->lambda).det_value) < 1e-8);
    }
}

TEST_CASE("negative eigenvalue decreases monotonically toward theta = pi", "[spectrum]")
{
    const double start = kPi - alpha_B();
    double prev = 0.0;
    for (int i = 1; i <= 20; ++i) {
        const double theta = start + (kPi - start) * i / 20.5;
        const auto e = negative_eigenvalue(theta);
        REQUIRE(e.has_value());
        CHECK(e->lambda < prev);
        prev = e->lambda;
    }
    CHECK(prev < -25.0);
}

TEST_CASE("at most one negative eigenvalue", "[spectrum]")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> th(0.0, kPi), a(-kPi, kPi);
    SpectrumConfig cfg;
    cfg.scan_step = 0.1;
    for (int i = 0; i < 50; ++i) {
        Extension ext;
        switch (i % 3) {
        case 0: ext = BTheta{th(rng)}; break;
        case 1: ext = HalfLine{i % 2 ? Side::plus : Side::minus, th(rng)}; break;
        default: ext = CK{a(rng), a(rng), a(rng), a(rng)}; break;
        }
        CHECK(eigenvalues_in(ext, -50.0, 0.0, cfg).eigenvalues.size() <= 1);
    }
}

TEST_CASE("lowest even eigenvalue moves with the coupling strength", "[spectrum]")
{
    const auto lowest = [](double c) {
        const auto s = eigenvalues_in(btheta_from_coupling(c), -1.0, 1.4);
        REQUIRE_FALSE(s.eigenvalues.empty());
        return s.eigenvalues.front().lambda;
    };
    double prev = -1.0;
    for (double c : {0.0, 0.5, 1.0, 2.0}) {
        const double l = lowest(c);
        CHECK(l > prev);
        CHECK(std::abs(l - even_oracle(c)) < 1e-7);
        prev = l;
    }
    prev = 2.0;
    for (double c : {0.0, -0.2, -0.4}) {
        const double l = lowest(c);
        CHECK(l < prev);
        CHECK(std::abs(l - even_oracle(c)) < 1e-7);
        prev = l;
    }
}

TEST_CASE("every boundary direction selects exactly one BTheta", "[spectrum]")
{
    double prev_theta = -1.0;
    for (double lambda = -4.0; lambda <= 8.0; lambda += 0.02) {
        const auto y = build_l2_solution(lambda, Side::plus, 1e-10);
        // even extension: sqrt2 cos th y(0) - 2 sin th y'(+0) = 0
        double theta = std::atan2(std::sqrt(2.0) * y.value0, 2.0 * y.dvalue0);
        if (theta < 0.0) theta += kPi;
        if (theta >= kPi) theta -= kPi;
        const auto s = secular(BTheta{theta}, lambda);
        CHECK(std::abs(s.sectors[0]) < 1e-8);
        if (prev_theta >= 0.0) {
            const double d = std::abs(theta - prev_theta);
            CHECK(std::min(d, kPi - d) < 0.25);
        }
        prev_theta = theta;
    }
}

TEST_CASE("parallel scans are deterministic", "[spectrum]")
{
    SpectrumConfig one, four;
    four.threads = 4;
    const auto a = eigenvalues_in(CK{0.3, 0.8, 0.1, -0.4}, -5.0, 9.0, one);
    const auto b = eigenvalues_in(CK{0.3, 0.8, 0.1, -0.4}, -5.0, 9.0, four);
    REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
    for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) CHECK(a.eigenvalues[i].lambda == b.eigenvalues[i].lambda);
}

TEST_CASE("eigenvalues_in configuration", "[spectrum]")
{
    SpectrumConfig cfg;
    cfg.max_count = 3;
    const auto s = eigenvalues_in(BTheta{kPi / 2.0}, 0.0, 10.0, cfg);
    CHECK(s.eigenvalues.size() == 3);
    CHECK_FALSE(s.warnings.empty());
    CHECK_THROWS_AS(eigenvalues_in(BTheta{1.0}, 2.0, 1.0), DomainError);
    cfg = {};
    cfg.tol = 0.0;
    CHECK_THROWS_AS(eigenvalues_in(BTheta{1.0}, 0.0, 1.0, cfg), DomainError);
    CHECK_THROWS_AS(eigenvalues_in(BTheta{4.0}, 0.0, 1.0), DomainError);
}

TEST_CASE("form positivity on compactly supported bumps", "[spectrum]")
{
    const auto bump = [](double t) {
        const double s = (t - 3.0) / 2.0;
        return std::abs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0;
    };
    const auto dbump = [&](double t) {
        const double s = (t - 3.0) / 2.0;
        return std::abs(s) < 1.0 ? bump(t) * (-2.0 * s / ((1.0 - s * s) * (1.0 - s * s))) / 2.0 : 0.0;
    };
    const auto grid = uniform_grid();
    const auto f = tabulate(grid, bump, dbump);
    const double q = form_positivity(f, Side::plus);
    CHECK(q > 0.0);

    const auto f2 = tabulate(grid, [&](double t) { return 2.0 * bump(t); }, [&](double t) { return 2.0 * dbump(t); });
    CHECK(form_positivity(f2, Side::plus) == Catch::Approx(4.0 * q).epsilon(1e-12));

    // 2 <A f, f> = int (-f'' + t^2 f) f over the support.
    const double expr = oracle::simpson(
        [&](double t) { return (-oracle::second_derivative(bump, t, 1e-3) + t * t * bump(t)) * bump(t); }, 1.0 + 1e-9,
        5.0 - 1e-9, 4000);
    CHECK(q == Catch::Approx(expr).epsilon(1e-6));

    const auto mirrored = tabulate(grid, [&](double t) { return bump(-t); }, [&](double t) { return -dbump(-t); });
    CHECK(form_positivity(mirrored, Side::minus) == Catch::Approx(q).epsilon(1e-12));
    CHECK_THROWS_AS(form_positivity(tabulate(grid, [](double) { return 0.0; }, [](double) { return 0.0; }), Side::plus),
                    DomainError);
}
