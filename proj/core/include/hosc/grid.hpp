#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace hosc {

enum class Side { minus, plus };

/// One-sided traces (f(-0), f'(-0), f(+0), f'(+0)).
struct BoundaryData {
    std::complex<double> f_minus;
    std::complex<double> df_minus;
    std::complex<double> f_plus;
    std::complex<double> df_plus;

    /// Euclidean norm of the quadruple.
    [[nodiscard]] double norm() const;
};

/**
 * Samples of a function that is smooth on each open half-line. Nodes exclude
 * 0; the one-sided limits at 0 live in `boundary`. Nodes t[0..negative_count)
 * are negative, the rest positive.
 */
struct GridFunction {
    std::vector<double> t;
    std::vector<double> values;
    std::vector<double> d_values;
    BoundaryData boundary;
    std::size_t negative_count = 0;

    [[nodiscard]] std::size_t size() const { return t.size(); }
    [[nodiscard]] std::size_t positive_count() const { return t.size() - negative_count; }
    /// max |f| over nodes and both one-sided limits.
    [[nodiscard]] double sup_norm() const;
};

inline constexpr double kDefaultHalfWidth = 12.0;
inline constexpr double kDefaultStep = 1.0 / 512.0;

/// {-w, -w+h, .., -h, h, .., w}: uniform, symmetric, 0 excluded. w must be a
/// positive multiple of h (within rounding).
[[nodiscard]] std::vector<double> uniform_grid(double half_width = kDefaultHalfWidth,
                                               double step = kDefaultStep);

/// A function given by value/derivative callables on each closed half-line;
/// the minus pieces are evaluated at -0 and the plus pieces at +0.
struct PiecewiseSmooth {
    std::function<double(double)> f_minus;
    std::function<double(double)> df_minus;
    std::function<double(double)> f_plus;
    std::function<double(double)> df_plus;
};

/// Checks that `grid` is strictly increasing, finite and free of 0.
void validate_grid(const std::vector<double>& grid);

[[nodiscard]] GridFunction tabulate(const std::vector<double>& grid, const PiecewiseSmooth& fn);

/// Same function on both sides.
[[nodiscard]] GridFunction tabulate(const std::vector<double>& grid,
                                    const std::function<double(double)>& f,
                                    const std::function<double(double)>& df);

/// One side of a GridFunction with its one-sided limit stored as the node
/// t = 0. Arrays follow increasing t.
struct SideSamples {
    std::vector<double> t;
    std::vector<double> values;
    std::vector<double> d_values;
    double step = 0.0;
};

/// Samples of one side including the node at 0. Requires uniform spacing on
/// that side with the innermost node one step from 0.
[[nodiscard]] SideSamples side_samples(const GridFunction& g, Side side);

/// Fourth-order finite-difference derivative of equally spaced samples
/// (central in the interior, one-sided at both ends). Needs >= 5 samples.
[[nodiscard]] std::vector<double> differentiate(const std::vector<double>& y, double h);

/// Composite Simpson rule on equally spaced samples; a 3/8 panel absorbs an
/// odd interval count. Needs >= 4 samples.
[[nodiscard]] double simpson(const std::vector<double>& y, double h);

/// int over both half-lines of integrand(t, f, f') by Simpson on each side.
[[nodiscard]] double grid_integral(const GridFunction& g,
                                   const std::function<double(double, double, double)>& integrand);

} // namespace hosc
