#include <hosc/grid.hpp>

#include <hosc/error.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace hosc {

double BoundaryData::norm() const
{
    return std::sqrt(std::norm(f_minus) + std::norm(df_minus) + std::norm(f_plus) +
                     std::norm(df_plus));
}

double GridFunction::sup_norm() const
{
    double m = std::max({std::abs(boundary.f_minus), std::abs(boundary.f_plus)});
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> uniform_grid(double half_width, double step)
{
    if (!(step > 0.0) || !(half_width > 0.0) || !std::isfinite(half_width))
        throw DomainError("uniform_grid needs positive half_width and step");
    const double ratio = half_width / step;
    const auto n = static_cast<long>(std::llround(ratio));
    if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio)
        throw DomainError("uniform_grid: half_width must be a positive multiple of step");

    std::vector<double> t;
    t.reserve(static_cast<std::size_t>(2 * n));
    for (long k = n; k >= 1; --k) t.push_back(-static_cast<double>(k) * step);
    for (long k = 1; k <= n; ++k) t.push_back(static_cast<double>(k) * step);
    return t;
}

void validate_grid(const std::vector<double>& grid)
{
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || grid[i] == 0.0)
            throw DomainError("grid nodes must be finite and nonzero");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw DomainError("grid must be strictly increasing");
    }
}

GridFunction tabulate(const std::vector<double>& grid, const PiecewiseSmooth& fn)
{
    validate_grid(grid);
    GridFunction g;
    g.t = grid;
    g.values.resize(grid.size());
    g.d_values.resize(grid.size());
    g.negative_count = static_cast<std::size_t>(
        std::lower_bound(grid.begin(), grid.end(), 0.0) - grid.begin());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const bool neg = i < g.negative_count;
        g.values[i] = neg ? fn.f_minus(grid[i]) : fn.f_plus(grid[i]);
        g.d_values[i] = neg ? fn.df_minus(grid[i]) : fn.df_plus(grid[i]);
    }
    g.boundary = {fn.f_minus(-0.0), fn.df_minus(-0.0), fn.f_plus(0.0), fn.df_plus(0.0)};
    return g;
}

GridFunction tabulate(const std::vector<double>& grid, const std::function<double(double)>& f,
                      const std::function<double(double)>& df)
{
    return tabulate(grid, PiecewiseSmooth{f, df, f, df});
}

SideSamples side_samples(const GridFunction& g, Side side)
{
    const std::size_t lo = side == Side::minus ? 0 : g.negative_count;
    const std::size_t hi = side == Side::minus ? g.negative_count : g.size();
    if (hi - lo < 4)
        throw DomainError("grid too coarse: fewer than 5 points on the " +
                          std::string(side == Side::minus ? "negative" : "positive") + " side");

    SideSamples s;
    const double h = side == Side::minus ? -g.t[hi - 1] : g.t[lo];
    s.step = h;
    const double tol = 1e-9 * h;
    for (std::size_t i = lo + 1; i < hi; ++i)
        if (std::abs(g.t[i] - g.t[i - 1] - h) > tol)
            throw DomainError("side samples require uniform spacing starting one step from 0");

    if (side == Side::plus) {
        s.t.push_back(0.0);
        s.values.push_back(g.boundary.f_plus.real());
        s.d_values.push_back(g.boundary.df_plus.real());
    }
    for (std::size_t i = lo; i < hi; ++i) {
        s.t.push_back(g.t[i]);
        s.values.push_back(g.values[i]);
        s.d_values.push_back(g.d_values[i]);
    }
    if (side == Side::minus) {
        s.t.push_back(0.0);
        s.values.push_back(g.boundary.f_minus.real());
        s.d_values.push_back(g.boundary.df_minus.real());
    }
    return s;
}

std::vector<double> differentiate(const std::vector<double>& y, double h)
{
    const std::size_t n = y.size();
    if (n < 5) throw DomainError("differentiate needs at least 5 samples");
    std::vector<double> d(n);
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) / (12.0 * h);
    const auto fwd = [&](std::size_t i) {
        return (-25.0 * y[i] + 48.0 * y[i + 1] - 36.0 * y[i + 2] + 16.0 * y[i + 3] -
                3.0 * y[i + 4]) / (12.0 * h);
    };
    const auto fwd1 = [&](std::size_t i) {
        return (-3.0 * y[i - 1] - 10.0 * y[i] + 18.0 * y[i + 1] - 6.0 * y[i + 2] + y[i + 3]) /
               (12.0 * h);
    };
    const auto bwd = [&](std::size_t i) {
        return (25.0 * y[i] - 48.0 * y[i - 1] + 36.0 * y[i - 2] - 16.0 * y[i - 3] +
                3.0 * y[i - 4]) / (12.0 * h);
    };
    const auto bwd1 = [&](std::size_t i) {
        return (3.0 * y[i + 1] + 10.0 * y[i] - 18.0 * y[i - 1] + 6.0 * y[i - 2] - y[i - 3]) /
               (12.0 * h);
    };
    d[0] = fwd(0);
    d[1] = fwd1(1);
    d[n - 1] = bwd(n - 1);
    d[n - 2] = bwd1(n - 2);
    return d;
}

double simpson(const std::vector<double>& y, double h)
{
    const std::size_t n = y.size();
    if (n < 4) throw DomainError("simpson needs at least 4 samples");
    std::size_t intervals = n - 1;
    double tail = 0.0;
    if (intervals % 2 == 1) {
        const std::size_t k = n - 4;
        tail = 3.0 * h / 8.0 * (y[k] + 3.0 * y[k + 1] + 3.0 * y[k + 2] + y[k + 3]);
        intervals -= 3;
    }
    double s = 0.0;
    if (intervals > 0) {
        s = y[0] + y[intervals];
        for (std::size_t i = 1; i < intervals; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
        s *= h / 3.0;
    }
    return s + tail;
}

double grid_integral(const GridFunction& g,
                     const std::function<double(double, double, double)>& integrand)
{
    double total = 0.0;
    for (Side side : {Side::minus, Side::plus}) {
        const SideSamples s = side_samples(g, side);
        std::vector<double> y(s.t.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = integrand(s.t[i], s.values[i], s.d_values[i]);
        total += simpson(y, s.step);
    }
    return total;
}

} // namespace hosc
