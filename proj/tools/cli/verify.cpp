#include "verify.hpp"

#include <hosc/distributions.hpp>
#include <hosc/error.hpp>
#include <hosc/extensions.hpp>
#include <hosc/hermite.hpp>
#include <hosc/ode.hpp>
#include <hosc/series.hpp>
#include <hosc/spectrum.hpp>

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hosc::cli {
namespace {

constexpr double kPi = boost::math::constants::pi<double>();
constexpr double kG0 = 1.479337559594319;

double spectrum_defect(const Extension& ext, double lo, double hi, const std::vector<double>& expected)
{
    const auto found = eigenvalues_in(ext, lo, hi).eigenvalues;
    if (found.size() != expected.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < found.size(); ++i) worst = std::max(worst, std::abs(found[i].lambda - expected[i]));
    return worst;
}

double sandwich()
{
    const SeriesSolution s = build_series(0.0, required_terms(0.0, 4.0, 1e-15));
    double worst = 0.0;
    for (int i = 1; i <= 50; ++i) {
        const double t = 0.08 * i;
        const double u = eval_u(s, t);
        worst = std::max({worst, std::cosh(t * t / 3.0) - u, u - std::cosh(t * t / 2.0)});
    }
    return std::max(worst, 0.0);
}

double v_ode_residual()
{
    double worst = 0.0;
    for (double omega : {0.0, 1.0, 3.0}) {
        const DecayingSolution v(omega, 6.0);
        for (double t : {0.5, 1.5, 3.0}) {
            const double h = 1e-3;
            const double d2 = (v.value(t + h) - 2.0 * v.value(t) + v.value(t - h)) / (h * h);
            const double rhs = (t * t + 2.0 * omega * omega) * v.value(t);
            worst = std::max(worst, std::abs(d2 - rhs) / std::abs(rhs));
        }
    }
    return worst;
}

double g_monotone()
{
    double worst = 0.0;
    double prev = eval_G(0.0);
    for (int i = 1; i <= 16; ++i) {
        const double g = eval_G(0.5 * i);
        worst = std::max(worst, g - prev);
        prev = g;
    }
    return worst;
}

double hermite_orthonormality()
{
    const auto grid = uniform_grid();
    std::vector<GridFunction> fs;
    for (int n = 0; n <= 5; ++n) fs.push_back(tabulate(psi(n), grid));
    double worst = 0.0;
    for (int i = 0; i <= 5; ++i)
        for (int j = i; j <= 5; ++j) {
            GridFunction prod = fs[i];
            for (std::size_t k = 0; k < prod.size(); ++k) prod.values[k] *= fs[j].values[k];
            prod.boundary.f_minus *= fs[j].boundary.f_minus;
            prod.boundary.f_plus *= fs[j].boundary.f_plus;
            const double ip = grid_integral(prod, [](double, double f, double) { return f; });
            worst = std::max(worst, std::abs(ip - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

double ground_state_annihilation()
{
    const auto g = tabulate(psi(0), uniform_grid());
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) worst = std::max(worst, std::abs(g.d_values[k] + g.t[k] * g.values[k]));
    return worst;
}

double ladder_u2_continuity()
{
    const auto r = ladder_eigenfunction(2, ladder_grid());
    const auto& b = r.u.boundary;
    if (std::abs(b.df_plus - b.df_minus) < 1.0) return std::numeric_limits<double>::infinity();
    return std::abs(b.f_plus - b.f_minus) / r.u.sup_norm();
}

double ode_vs_series()
{
    double worst = 0.0;
    for (double omega : {0.25, 0.5, 1.0, 2.0}) {
        const auto y = build_l2_solution(-omega * omega, Side::plus, 1e-10);
        worst = std::max(worst, std::abs(y.value0 / -y.dvalue0 - eval_G(omega)));
    }
    return worst;
}

double ode_mirror()
{
    const auto p = build_l2_solution(-1.0, Side::plus, 1e-10);
    const auto m = build_l2_solution(-1.0, Side::minus, 1e-10);
    return std::abs(p.value0 - m.value0) + std::abs(p.dvalue0 + m.dvalue0);
}

double neutrality()
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> theta(0.0, kPi), angle(-kPi, kPi);
    double worst = 0.0;
    const auto check = [&](const Extension& e) {
        const auto rep = neutral_subspace_check(e);
        if (!rep.neutral) return std::numeric_limits<double>::infinity();
        return rep.max_form_value;
    };
    for (int i = 0; i < 100; ++i) {
        worst = std::max(worst, check(HalfLine{Side::plus, theta(rng)}));
        worst = std::max(worst, check(HalfLine{Side::minus, theta(rng)}));
        worst = std::max(worst, check(BTheta{theta(rng)}));
        worst = std::max(worst, check(CK{angle(rng), angle(rng), angle(rng), angle(rng)}));
    }
    return worst;
}

double coupling_round_trip()
{
    double worst = 0.0;
    for (double c : {-3.0, -0.4, 0.0, 0.5, 2.0}) worst = std::max(worst, std::abs(coupling_from_btheta(btheta_from_coupling(c).theta).c - c));
    return worst;
}

double thresholds()
{
    const double b = std::abs(secular(BTheta{kPi - alpha_B()}, 0.0).det_value);
    const double a = std::abs(secular(HalfLine{Side::plus, kPi - alpha_A()}, 0.0).det_value);
    return std::max(a, b);
}

double negative_cross_check()
{
    double worst = 0.0;
    for (double omega : {0.5, 1.0, 2.0}) {
        const double theta = kPi - std::atan(eval_G(omega) / std::sqrt(2.0));
        const auto inv = negative_eigenvalue(theta);
        const auto roots = eigenvalues_in(BTheta{theta}, -omega * omega - 1.0, -omega * omega + 0.4).eigenvalues;
        if (!inv || roots.empty()) return std::numeric_limits<double>::infinity();
        worst = std::max({worst, std::abs(inv->lambda + omega * omega), std::abs(roots.front().lambda - inv->lambda)});
    }
    return worst;
}

double delta_suite(bool prime)
{
    double worst = 0.0;
    for (const auto& f : test_function_suite()) {
        const double exact = prime ? f.fn.df(0.0) : f.fn.f(0.0);
        const double got = prime ? delta_prime_functional(f) : delta_functional(f);
        const double scale = std::max(std::abs(exact), 1e-3 * f.plus_norm);
        worst = std::max(worst, std::abs(got - exact) / scale);
    }
    return worst;
}

double identity(int index)
{
    const auto suite = test_function_suite();
    const auto g = w_piecewise(index);
    double worst = 0.0;
    for (std::size_t i = 0; i < suite.size(); i += 5) worst = std::max(worst, perturbation_identity_check(g, suite[i]).discrepancy);
    return worst;
}

double delta_linearity()
{
    const auto suite = test_function_suite();
    const auto& f = suite[1];
    const auto& g = suite[8];
    const double a = 0.7, b = -1.3;
    const SmoothFunction h{[&](double t) { return a * f.fn.f(t) + b * g.fn.f(t); },
                           [&](double t) { return a * f.fn.df(t) + b * g.fn.df(t); },
                           [&](double t) { return a * f.fn.d2f(t) + b * g.fn.d2f(t); }};
    const auto th = make_test_function("combo", h);
    return std::abs(delta_functional(th) - a * delta_functional(f) - b * delta_functional(g));
}

std::vector<Invariant> build_registry()
{
    const auto odd_set = [](double theta) {
        const auto found = eigenvalues_in(BTheta{theta}, 0.0, 6.0).eigenvalues;
        double worst = 0.0;
        for (double target : {1.5, 3.5, 5.5}) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& e : found) best = std::min(best, std::abs(e.lambda - target));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return {
        {"series", "g0_reference", 1e-10, [] { return std::abs(eval_G(0.0) - kG0); }},
        {"series", "cosh_sandwich", 0.0, sandwich},
        {"series", "v_ode_residual", 1e-5, v_ode_residual},
        {"series", "g_decreasing", 0.0, g_monotone},
        {"hermite", "orthonormality", 1e-10, hermite_orthonormality},
        {"hermite", "ground_state_annihilation", 1e-8, ground_state_annihilation},
        {"hermite", "ladder_u2_continuity", 1e-8, ladder_u2_continuity},
        {"ode", "boundary_direction_vs_series", 1e-6, ode_vs_series},
        {"ode", "mirror_symmetry", 1e-12, ode_mirror},
        {"extensions", "neutral_subspaces", 1e-10, neutrality},
        {"extensions", "coupling_round_trip", 1e-12, coupling_round_trip},
        {"spectrum", "free_oscillator", 1e-6,
         [] {
             std::vector<double> e;
             for (int n = 0; n <= 9; ++n) e.push_back(n + 0.5);
             return spectrum_defect(BTheta{kPi / 2.0}, 0.0, 10.2, e);
         }},
        {"spectrum", "halfline_dirichlet", 1e-6,
         [] { return spectrum_defect(HalfLine{Side::plus, 0.0}, 0.0, 8.0, {1.5, 3.5, 5.5, 7.5}); }},
        {"spectrum", "halfline_neumann", 1e-6,
         [] { return spectrum_defect(HalfLine{Side::plus, kPi / 2.0}, 0.0, 7.0, {0.5, 2.5, 4.5, 6.5}); }},
        {"spectrum", "zero_thresholds", 1e-7, thresholds},
        {"spectrum", "negative_eigenvalue_cross_check", 1e-6, negative_cross_check},
        {"spectrum", "odd_spectrum_invariance", 1e-6,
         [odd_set] { return std::max({odd_set(0.2), odd_set(1.0), odd_set(2.5)}); }},
        {"distributions", "delta", 1e-6, [] { return delta_suite(false); }},
        {"distributions", "delta_prime", 1e-6, [] { return delta_suite(true); }},
        {"distributions", "identity_w1", 1e-6, [] { return identity(1); }},
        {"distributions", "identity_w2", 1e-6, [] { return identity(2); }},
        {"distributions", "delta_linearity", 1e-8, delta_linearity},
    };
}

} // namespace

const std::vector<Invariant>& invariant_registry()
{
    static const std::vector<Invariant> reg = build_registry();
    return reg;
}

std::vector<std::string> module_names()
{
    return {"series", "hermite", "ode", "extensions", "spectrum", "distributions"};
}

std::vector<Outcome> run_invariants(const std::optional<std::string>& only, double loosen)
{
    std::vector<Outcome> out;
    for (const auto& inv : invariant_registry()) {
        if (only && inv.module != *only) continue;
        Outcome o{inv.module, inv.name, std::numeric_limits<double>::quiet_NaN(), std::max(inv.threshold, loosen), false, ""};
        try {
            o.residual = inv.residual();
            o.pass = o.residual <= o.threshold;
        } catch (const std::exception& e) {
            o.detail = e.what();
        }
        out.push_back(std::move(o));
    }
    return out;
}

} // namespace hosc::cli
