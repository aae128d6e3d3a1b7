#include <catch_amalgamated.hpp>

#include <hosc/error.hpp>
#include <hosc/extensions.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>

using namespace hosc;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

BoundaryData bd(cd a, cd b, cd c, cd d)
{
    return {a, b, c, d};
}

} // namespace

TEST_CASE("validation of extension parameters", "[extensions]")
{
    CHECK_NOTHROW(validate(BTheta{0.0}));
    CHECK_NOTHROW(validate(HalfLine{Side::minus, 3.14}));
    try {
        validate(BTheta{4.0});
        FAIL("theta = 4 accepted");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("[0, pi)") != std::string::npos);
    }
    CHECK_THROWS_AS(validate(HalfLine{Side::plus, kPi}), DomainError);
    CHECK_THROWS_AS(validate(HalfLine{Side::plus, -0.1}), DomainError);
    CHECK_THROWS_AS(validate(CK{std::nan(""), 0.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("K is unitary for random parameters", "[extensions]")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> a(-kPi, kPi);
    for (int i = 0; i < 100; ++i) {
        const auto k = k_matrix(CK{a(rng), a(rng), a(rng), a(rng)});
        CHECK((k.adjoint() * k - Eigen::Matrix2cd::Identity()).norm() < 1e-12);
    }
}

TEST_CASE("indefinite forms", "[extensions]")
{
    const auto b = btheta_form();
    REQUIRE(b.dimension == 3);
    CHECK((b.gram - b.gram.adjoint()).norm() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b.gram);
    const auto ev = es.eigenvalues();
    CHECK(ev(0) == Catch::Approx(-std::sqrt(2.0)));
    CHECK(std::abs(ev(1)) < 1e-15);
    CHECK(ev(2) == Catch::Approx(std::sqrt(2.0)));
    CHECK(b.max_neutral_dimension() == 2);

    CHECK((halfline_form(Side::minus).gram + halfline_form(Side::plus).gram).norm() == 0.0);
    CHECK(halfline_form(Side::plus).max_neutral_dimension() == 1);
    CHECK(ck_form().max_neutral_dimension() == 2);
}

TEST_CASE("boundary residuals of the named conditions", "[extensions]")
{
    CHECK(boundary_residual(BTheta{kPi / 2.0}, bd(1.0, 2.0, 1.0, 2.0)) < 1e-15);
    CHECK(boundary_residual(BTheta{kPi / 2.0}, bd(1.0, 2.0, 1.0, 2.5)) > 0.1);
    CHECK(boundary_residual(BTheta{kPi / 2.0}, bd(1.0, 2.0, 1.1, 2.0)) > 0.01);

    for (double theta : {0.4, 1.2, 2.7}) {
        const double jump = 0.8;  // f'(+0) - f'(-0)
        const double f0 = std::tan(theta) / std::sqrt(2.0) * jump;
        CHECK(boundary_residual(BTheta{theta}, bd(f0, 0.3, f0, 0.3 + jump)) < 1e-14);
    }

    CHECK(boundary_residual(HalfLine{Side::plus, 0.0}, bd(5.0, 7.0, 0.0, 3.0)) < 1e-15);
    CHECK(boundary_residual(HalfLine{Side::minus, kPi / 2.0}, bd(1.0, 0.0, 9.0, 9.0)) < 1e-15);
    CHECK(boundary_residual(HalfLine{Side::plus, kPi / 4.0}, bd(0.0, 0.0, 2.0, 2.0)) < 1e-15);
}

TEST_CASE("CK special cases", "[extensions]")
{
    const CK classical = ck_from_special(SpecialCase::classical);
    CHECK(classical.phi == Catch::Approx(kPi / 2.0));
    CHECK(boundary_residual(classical, bd(1.0, 2.0, 1.0, 2.0)) < 1e-15);
    CHECK(boundary_residual(classical, bd(1.0, 2.0, 1.0, 3.0)) > 0.1);

    // K = antidiag(-1, -1) couples f(-0) = -f'(+0), f'(-0) = f(+0) rather than continuity.
    const CK antidiag{kPi, 0.0, 0.0, 0.0};
    CHECK(boundary_residual(antidiag, bd(1.0, 2.0, 2.0, -1.0)) < 1e-15);
    CHECK(boundary_residual(antidiag, bd(1.0, 2.0, 1.0, 2.0)) > 0.1);

    for (double alpha : {0.3, 1.0, 2.0}) {
        const double t = std::tan(alpha);
        CHECK(boundary_residual(ck_from_special(SpecialCase::delta, alpha), bd(1.0, 0.5 + 2.0 * t, 1.0, 0.5)) < 1e-14);
        CHECK(boundary_residual(ck_from_special(SpecialCase::delta_prime, alpha), bd(0.7, 1.0, 0.7 - 2.0 * t, 1.0)) < 1e-14);
    }

    const CK hard = ck_from_special(SpecialCase::delta, kPi / 2.0);
    CHECK(boundary_residual(hard, bd(0.0, 1.0, 0.0, 3.0)) < 1e-15);
    CHECK(boundary_residual(hard, bd(1.0, 0.0, 1.0, 0.0)) > 0.1);
}

TEST_CASE("delta coupling equals BTheta with cot theta = -sqrt2 tan alpha", "[extensions]")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (double alpha : {0.2, 0.9, 1.4, 2.5}) {
        const CK d = ck_from_special(SpecialCase::delta, alpha);
        const BTheta b = btheta_from_coupling(-std::tan(alpha));
        CHECK(std::abs(1.0 / std::tan(b.theta) + std::sqrt(2.0) * std::tan(alpha)) < 1e-12);
        for (int i = 0; i < 20; ++i) {
            const double f0 = u(rng);
            const double dm = u(rng);
            const BoundaryData ok = bd(f0, dm, f0, dm - 2.0 * std::tan(alpha) * f0);
            CHECK(boundary_residual(d, ok) < 1e-13);
            CHECK(boundary_residual(b, ok) < 1e-13);
            const BoundaryData off = bd(f0, dm, f0, dm - 2.0 * std::tan(alpha) * f0 + 0.5);
            CHECK(boundary_residual(d, off) > 1e-3);
            CHECK(boundary_residual(b, off) > 1e-3);
        }
    }
}

TEST_CASE("coupling strength and theta", "[extensions]")
{
    CHECK(coupling_from_btheta(kPi / 2.0).c == Catch::Approx(0.0).margin(1e-16));
    CHECK(coupling_from_btheta(0.0).dirichlet);
    CHECK(btheta_from_coupling(Coupling::dirichlet_point()).theta == 0.0);
    CHECK(coupling_from_btheta(kPi - 1e-6).c < -1e5);
    CHECK(btheta_from_coupling(-1e9).theta > kPi - 1e-8);
    CHECK(btheta_from_coupling(coupling_from_btheta(2.0)).theta == Catch::Approx(2.0).epsilon(1e-12));
    for (double c : {-5.0, -0.1, 0.0, 0.3, 40.0}) {
        const double theta = btheta_from_coupling(c).theta;
        CHECK(theta > 0.0);
        CHECK(theta < kPi);
        CHECK(coupling_from_btheta(theta).c == Catch::Approx(c).margin(1e-12));
    }
}

TEST_CASE("neutral subspaces", "[extensions]")
{
    for (double theta : {0.3, kPi / 2.0, 2.9}) {
        const auto r = neutral_subspace_check(BTheta{theta});
        CHECK(r.neutral);
        CHECK(r.dimension == 2);
    }
    const auto classical = neutral_subspace_check(ck_from_special(SpecialCase::classical));
    CHECK(classical.neutral);
    CHECK(classical.dimension == 2);

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> th(0.0, kPi), a(-kPi, kPi);
    for (int i = 0; i < 100; ++i) {
        CHECK(neutral_subspace_check(HalfLine{Side::plus, th(rng)}).neutral);
        CHECK(neutral_subspace_check(HalfLine{Side::minus, th(rng)}).neutral);
        CHECK(neutral_subspace_check(BTheta{th(rng)}).neutral);
        CHECK(neutral_subspace_check(CK{a(rng), a(rng), a(rng), a(rng)}).neutral);
    }

    Eigen::Matrix2cd bad = k_matrix(CK{0.4, 0.7, 0.2, -1.0});
    bad(0, 1) *= 1.3;
    const auto r = neutral_subspace_check(bad);
    CHECK_FALSE(r.neutral);
    CHECK(r.max_form_value > 1e-3);
    CHECK_FALSE(r.detail.empty());
}

TEST_CASE("symmetry map", "[extensions]")
{
    CHECK(symmetry_map(kPi / 2.0, Side::plus) == std::pair{kPi / 2.0, Side::minus});
    CHECK(symmetry_map(0.0, Side::plus) == std::pair{0.0, Side::minus});
    for (double theta : {0.0, 0.4, 1.9, 3.0}) {
        const auto [t1, s1] = symmetry_map(theta, Side::minus);
        const auto [t2, s2] = symmetry_map(t1, s1);
        CHECK(t2 == Catch::Approx(theta).margin(1e-15));
        CHECK(s2 == Side::minus);
    }
}

TEST_CASE("extension serialization", "[extensions]")
{
    const std::vector<Extension> exts{HalfLine{Side::plus, 0.0}, HalfLine{Side::minus, 1.0 / 3.0},
                                      BTheta{2.2}, CK{0.1, -0.2, 1.0 / 7.0, 3.0}};
    for (const auto& e : exts) {
        const Extension back = parse_extension(to_string(e));
        CHECK(to_string(back) == to_string(e));
        CHECK(back.index() == e.index());
    }
    CHECK(std::get<BTheta>(parse_extension("theta=0.5 family=btheta")).theta == 0.5);
    CHECK_THROWS_AS(parse_extension("family=bogus theta=1"), DomainError);
    CHECK_THROWS_AS(parse_extension("family=btheta"), DomainError);
    CHECK_THROWS_AS(parse_extension("family=btheta theta=abc"), DomainError);
    CHECK_THROWS_AS(parse_extension("family=btheta theta=1 extra=2"), DomainError);
    CHECK_THROWS_AS(parse_extension("family=btheta theta=4"), DomainError);
}
