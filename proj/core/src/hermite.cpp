#include <hosc/hermite.hpp>

#include <hosc/error.hpp>

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace hosc {
namespace {

void check_phi_arg(double t)
{
    if (!(std::abs(t) <= kPhiGuard))
        throw DomainError("phi functions are evaluated only for |t| <= 8");
}

enum class Ladder { raise, lower };

// Without lambda, f'' comes from differencing f'; with lambda, f solves
// A f = lambda f and f'' = (t^2 - 2 lambda) f.
GridFunction apply_ladder(const GridFunction& f, Ladder kind, std::optional<double> lambda)
{
    GridFunction g = f;
    const double s = kind == Ladder::raise ? -1.0 : 1.0;  // g = s f' + t f
    for (Side side : {Side::minus, Side::plus}) {
        const SideSamples ss = side_samples(f, side);
        std::vector<double> d2(ss.t.size());
        if (lambda) {
            for (std::size_t k = 0; k < d2.size(); ++k)
                d2[k] = (ss.t[k] * ss.t[k] - 2.0 * *lambda) * ss.values[k];
        } else {
            d2 = differentiate(ss.d_values, ss.step);
        }
        const std::size_t offset = side == Side::minus ? 0 : f.negative_count;
        const std::size_t m = ss.t.size();
        for (std::size_t k = 0; k < m; ++k) {
            const double t = ss.t[k];
            const double v = s * ss.d_values[k] + t * ss.values[k];
            const double dv = s * d2[k] + ss.values[k] + t * ss.d_values[k];
            const bool is_boundary = side == Side::minus ? k + 1 == m : k == 0;
            if (is_boundary) {
                if (side == Side::minus) {
                    g.boundary.f_minus = v;
                    g.boundary.df_minus = dv;
                } else {
                    g.boundary.f_plus = v;
                    g.boundary.df_plus = dv;
                }
                continue;
            }
            const std::size_t idx = offset + (side == Side::minus ? k : k - 1);
            g.values[idx] = v;
            g.d_values[idx] = dv;
        }
    }
    return g;
}

GridFunction ladder_run(int n, const std::vector<double>& grid)
{
    GridFunction u = tabulate(grid, PiecewiseSmooth{phi_minus, phi_minus_prime, phi_plus,
                                                    phi_plus_prime});
    for (int k = 0; k < n; ++k) u = ladder_lower(u, -k - 0.5);
    return u;
}

// The same chain at one abscissa in long double; t = +-0 selects the side.
long double shadow_value(int n, double t)
{
    const long double x = t;
    const long double sign = std::signbit(t) ? -1.0L : 1.0L;
    const long double y = sign * x;  // phi_-(t) = phi_+(-t)
    long double f = std::exp(0.5L * y * y) * 0.5L * std::sqrt(std::numbers::pi_v<long double>) *
                    std::erfc(y);
    long double df = sign * (y * f - std::exp(-0.5L * y * y));
    for (int k = 0; k < n; ++k) {
        const long double lambda = -k - 0.5L;
        const long double g = df + x * f;
        const long double dg = (x * x - 2.0L * lambda) * f + f + x * df;
        f = g;
        df = dg;
    }
    return f;
}

} // namespace

double HermiteFunction::norm_const() const
{
    return std::exp(log_norm_const);
}

double HermiteFunction::poly(double t) const
{
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 2.0 * t;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * t * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double HermiteFunction::value(double t) const
{
    double prev = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * t * t);
    if (n == 0) return prev;
    double cur = std::sqrt(2.0) * t * prev;
    for (int k = 1; k < n; ++k) {
        const double next = std::sqrt(2.0 / (k + 1)) * t * cur - std::sqrt(double(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double HermiteFunction::derivative(double t) const
{
    if (n == 0) return -t * value(t);
    HermiteFunction lower{n - 1, {}, 0.0};
    return -t * value(t) + std::sqrt(2.0 * n) * lower.value(t);
}

double HermiteFunction::second_derivative(double t) const
{
    return (t * t - 2.0 * n - 1.0) * value(t);
}

HermiteFunction psi(int n)
{
    if (n < 0 || n > kMaxHermiteIndex)
        throw DomainError("psi index must lie in [0, 60], got " + std::to_string(n));
    std::vector<double> prev{1.0};
    std::vector<double> cur = prev;
    if (n >= 1) cur = {0.0, 2.0};
    for (int k = 1; k < n; ++k) {
        std::vector<double> next(static_cast<std::size_t>(k + 2), 0.0);
        for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += 2.0 * cur[j];
        for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= 2.0 * k * prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    const double log_c =
        -0.5 * (0.5 * std::log(std::numbers::pi) + n * std::log(2.0) + std::lgamma(n + 1.0));
    return {n, cur, log_c};
}

GridFunction tabulate(const HermiteFunction& h, const std::vector<double>& grid)
{
    return tabulate(grid, [&](double t) { return h.value(t); },
                    [&](double t) { return h.derivative(t); });
}

GridFunction ladder_raise(const GridFunction& f)
{
    return apply_ladder(f, Ladder::raise, std::nullopt);
}

GridFunction ladder_lower(const GridFunction& f)
{
    return apply_ladder(f, Ladder::lower, std::nullopt);
}

GridFunction ladder_raise(const GridFunction& f, double lambda)
{
    return apply_ladder(f, Ladder::raise, lambda);
}

GridFunction ladder_lower(const GridFunction& f, double lambda)
{
    return apply_ladder(f, Ladder::lower, lambda);
}

double phi_plus(double t)
{
    check_phi_arg(t);
    return std::exp(0.5 * t * t) * 0.5 * std::sqrt(std::numbers::pi) * std::erfc(t);
}

double phi_plus_prime(double t)
{
    return t * phi_plus(t) - std::exp(-0.5 * t * t);
}

double phi_minus(double t)
{
    return phi_plus(-t);
}

double phi_minus_prime(double t)
{
    return -phi_plus_prime(-t);
}

double phi_one(double t)
{
    check_phi_arg(t);
    return std::exp(0.5 * t * t);
}

double phi_one_prime(double t)
{
    return t * phi_one(t);
}

std::vector<double> ladder_grid()
{
    return uniform_grid(kPhiGuard, kDefaultStep);
}

LadderResult ladder_eigenfunction(int n, const std::vector<double>& grid, double budget)
{
    if (n < 1 || n > kMaxLadderIndex)
        throw DomainError("ladder_eigenfunction index must lie in [1, 8], got " +
                          std::to_string(n));
    validate_grid(grid);
    if (grid.front() < -kPhiGuard || grid.back() > kPhiGuard)
        throw DomainError("ladder_eigenfunction grid must lie in [-8, 8]");

    LadderResult r{ladder_run(n, grid), 0.0};
    double diff = std::max(
        std::abs(r.u.boundary.f_minus.real() - static_cast<double>(shadow_value(n, -0.0))),
        std::abs(r.u.boundary.f_plus.real() - static_cast<double>(shadow_value(n, 0.0))));
    for (std::size_t i = 0; i < grid.size(); ++i)
        diff = std::max(diff, std::abs(r.u.values[i] - static_cast<double>(shadow_value(n, grid[i]))));
    r.error_estimate = diff / r.u.sup_norm();
    if (r.error_estimate > budget)
        throw NumericError("ladder_eigenfunction: estimated error " +
                           std::to_string(r.error_estimate) + " exceeds budget");
    return r;
}

} // namespace hosc
