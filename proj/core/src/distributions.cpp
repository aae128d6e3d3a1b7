#include <hosc/distributions.hpp>

#include <hosc/error.hpp>
#include <hosc/hermite.hpp>
#include <hosc/series.hpp>

#include <boost/math/interpolators/quintic_hermite.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <algorithm>

namespace hosc {
namespace {

constexpr double kWRange = 14.0;

const DecayingSolution& v0()
{
    static const DecayingSolution v(0.0, kWRange);
    return v;
}

// v(., 0) on [0, 14] from exact nodal (v, v', v'' = t^2 v); interpolation error O(h^6).
constexpr double kWStep = 1.0 / 512.0;

const boost::math::interpolators::cardinal_quintic_hermite<std::vector<double>>& v0_interp()
{
    static const auto interp = [] {
        const auto n = static_cast<std::size_t>(std::lround(kWRange / kWStep)) + 1;
        std::vector<double> ts(n);
        for (std::size_t i = 0; i < n; ++i) ts[i] = static_cast<double>(i) * kWStep;
        const auto table = v0().tabulate(ts);
        std::vector<double> y(n), dy(n), d2y(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = table[i][0];
            dy[i] = table[i][1];
            d2y[i] = ts[i] * ts[i] * y[i];
        }
        return boost::math::interpolators::cardinal_quintic_hermite<std::vector<double>>(
            std::move(y), std::move(dy), std::move(d2y), 0.0, kWStep);
    }();
    return interp;
}

double g0()
{
    static const double g = v0().value(0.0);
    return g;
}

SmoothFunction hermite_smooth(int n)
{
    const HermiteFunction h = psi(n);
    return {[h](double t) { return h.value(t); }, [h](double t) { return h.derivative(t); },
            [h](double t) { return h.second_derivative(t); }};
}

SmoothFunction gauss_poly(std::array<double, 4> p, double a, double c)
{
    const auto poly = [p](double t) { return p[0] + t * (p[1] + t * (p[2] + t * p[3])); };
    const auto dpoly = [p](double t) { return p[1] + t * (2.0 * p[2] + 3.0 * t * p[3]); };
    const auto d2poly = [p](double t) { return 2.0 * p[2] + 6.0 * t * p[3]; };
    const auto e = [a, c](double t) { return std::exp(-a * (t - c) * (t - c)); };
    return {[=](double t) { return poly(t) * e(t); },
            [=](double t) { return (dpoly(t) - 2.0 * a * (t - c) * poly(t)) * e(t); },
            [=](double t) {
                const double s = t - c;
                return (d2poly(t) - 4.0 * a * s * dpoly(t) + (4.0 * a * a * s * s - 2.0 * a) * poly(t)) * e(t);
            }};
}

} // namespace

double apply_L(const SmoothFunction& fn, double t)
{
    return -fn.d2f(t) + t * t * fn.f(t);
}

double line_integral(const std::function<double(double)>& f_minus,
                     const std::function<double(double)>& f_plus, const QuadratureConfig& qc)
{
    return integrate(f_minus, -kInnerProductHalfWidth, 0.0, qc).value +
           integrate(f_plus, 0.0, kInnerProductHalfWidth, qc).value;
}

TestFunction make_test_function(std::string label, SmoothFunction fn, const QuadratureConfig& qc)
{
    const auto sq = [&](double t) {
        const double f = fn.f(t);
        const double lf = apply_L(fn, t);
        return f * f + lf * lf;
    };
    const double n2 = line_integral(sq, sq, qc);
    return {std::move(label), std::move(fn), std::sqrt(n2)};
}

GridFunction tabulate(const TestFunction& f, const std::vector<double>& grid)
{
    return tabulate(grid, f.fn.f, f.fn.df);
}

PiecewiseFunction w_piecewise(int index)
{
    if (index != 1 && index != 2) throw DomainError("w index must be 1 or 2");
    const double sm = index == 1 ? 1.0 : -1.0;  // w(t) = sm v(-t) for t < 0
    const auto check = [](double t) {
        if (std::abs(t) > kWRange) throw DomainError("w functions are evaluated for |t| <= 14");
    };
    const auto& vi = v0_interp();
    SmoothFunction plus{[=, &vi](double t) { check(t); return vi(t); },
                        [=, &vi](double t) { check(t); return vi.prime(t); },
                        [=, &vi](double t) { check(t); return t * t * vi(t); }};
    SmoothFunction minus{[=, &vi](double t) { check(t); return sm * vi(-t); },
                         [=, &vi](double t) { check(t); return -sm * vi.prime(-t); },
                         [=, &vi](double t) { check(t); return sm * t * t * vi(-t); }};
    return {minus, plus};
}

GridFunction w_function(int index, const std::vector<double>& grid)
{
    if (index != 1 && index != 2) throw DomainError("w index must be 1 or 2");
    validate_grid(grid);
    if (grid.empty() || grid.front() < -kWRange || grid.back() > kWRange)
        throw DomainError("w_function grid must lie in [-14, 14]");
    const double sm = index == 1 ? 1.0 : -1.0;

    std::vector<double> abs_t;
    for (double t : grid) abs_t.push_back(std::abs(t));
    abs_t.push_back(0.0);
    std::sort(abs_t.begin(), abs_t.end());
    abs_t.erase(std::unique(abs_t.begin(), abs_t.end()), abs_t.end());
    const auto table = v0().tabulate(abs_t);
    const auto at = [&](double x) {
        const auto i = static_cast<std::size_t>(std::lower_bound(abs_t.begin(), abs_t.end(), x) - abs_t.begin());
        return table[i];
    };

    GridFunction g;
    g.t = grid;
    g.values.resize(grid.size());
    g.d_values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto [v, dv] = at(std::abs(grid[i]));
        if (grid[i] > 0.0) {
            g.values[i] = v;
            g.d_values[i] = dv;
        } else {
            g.values[i] = sm * v;
            g.d_values[i] = -sm * dv;
            ++g.negative_count;
        }
    }
    const auto [v0v, v0d] = table.front();
    g.boundary = {sm * v0v, -sm * v0d, v0v, v0d};
    return g;
}

double delta_functional(const TestFunction& f, const QuadratureConfig& qc)
{
    const PiecewiseFunction w = w_piecewise(1);
    const double ip = line_integral([&](double t) { return apply_L(f.fn, t) * w.minus.f(t); },
                                    [&](double t) { return apply_L(f.fn, t) * w.plus.f(t); }, qc);
    return 0.5 * ip;
}

double delta_prime_functional(const TestFunction& f, const QuadratureConfig& qc)
{
    const PiecewiseFunction w = w_piecewise(2);
    const double ip = line_integral([&](double t) { return apply_L(f.fn, t) * w.minus.f(t); },
                                    [&](double t) { return apply_L(f.fn, t) * w.plus.f(t); }, qc);
    return ip / (2.0 * g0());
}

double boundedness_ratio(const TestFunction& f)
{
    if (!(f.plus_norm > 0.0)) throw DomainError("boundedness_ratio needs a nonzero test function");
    return std::abs(f.fn.f(0.0)) / f.plus_norm;
}

IdentityCheck perturbation_identity_check(const PiecewiseFunction& g, const TestFunction& f,
                                          const QuadratureConfig& qc)
{
    IdentityCheck r;
    r.lhs = line_integral([&](double t) { return f.fn.f(t) * apply_L(g.minus, t); },
                          [&](double t) { return f.fn.f(t) * apply_L(g.plus, t); }, qc);
    const double ip = line_integral([&](double t) { return apply_L(f.fn, t) * g.minus.f(t); },
                                    [&](double t) { return apply_L(f.fn, t) * g.plus.f(t); }, qc);
    const double jump = g.plus.f(0.0) - g.minus.f(-0.0);
    const double djump = g.plus.df(0.0) - g.minus.df(-0.0);
    r.rhs = ip - jump * f.fn.df(0.0) + djump * f.fn.f(0.0);
    r.discrepancy = std::abs(r.lhs - r.rhs);
    return r;
}

std::vector<TestFunction> test_function_suite(std::uint64_t seed, const QuadratureConfig& qc)
{
    std::vector<TestFunction> suite;
    for (int n = 0; n <= 5; ++n) suite.push_back(make_test_function("psi" + std::to_string(n), hermite_smooth(n), qc));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_real_distribution<double> width(0.3, 1.5);
    std::uniform_real_distribution<double> centre(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        std::array<double, 4> p{};
        for (double& x : p) x = coef(rng);
        const double a = width(rng);
        const double c = centre(rng);
        char label[32];
        std::snprintf(label, sizeof label, "gauss-poly-%02d", i);
        suite.push_back(make_test_function(label, gauss_poly(p, a, c), qc));
    }
    return suite;
}

} // namespace hosc
