#pragma once

#include <hosc/grid.hpp>
#include <hosc/quadrature.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hosc {

// Throughout, L = -d^2/dt^2 + t^2 (twice the oscillator expression).

/// Default error contract for inner products: their integrands cancel down
/// to point values, so relative accuracy is bounded by the L1 mass.
[[nodiscard]] inline QuadratureConfig inner_product_config()
{
    QuadratureConfig qc;
    qc.rel_tol = 1e-10;
    qc.abs_tol = 1e-12;
    return qc;
}

/// f with its first two derivatives, smooth on the line.
struct SmoothFunction {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;
};

/// (L f)(t).
[[nodiscard]] double apply_L(const SmoothFunction& fn, double t);

/// A member of the operator domain with its graph norm
/// ||f||_+ = (||f||^2 + ||L f||^2)^{1/2}.
struct TestFunction {
    std::string label;
    SmoothFunction fn;
    double plus_norm = 0.0;
};

/// Computes plus_norm by quadrature on [-12, 12].
[[nodiscard]] TestFunction make_test_function(std::string label, SmoothFunction fn,
                                              const QuadratureConfig& qc = inner_product_config());

[[nodiscard]] GridFunction tabulate(const TestFunction& f, const std::vector<double>& grid);

/// g smooth on each closed half-line, possibly with jumps at 0.
struct PiecewiseFunction {
    SmoothFunction minus;
    SmoothFunction plus;
};

/// w_1 (index 1) is the even, w_2 (index 2) the odd extension of v(., 0):
/// w_1(+-0) = G(0), w_1'(+-0) = -+1, w_2(+-0) = +-G(0), w_2'(+-0) = -1.
/// Both satisfy L w = 0 on each half-line. Evaluable for |t| <= 14.
[[nodiscard]] PiecewiseFunction w_piecewise(int index);

/// w_index sampled on `grid` (|t| <= 14).
[[nodiscard]] GridFunction w_function(int index, const std::vector<double>& grid = uniform_grid());

/// 1/2 <L f, w_1>, which equals f(0).
[[nodiscard]] double delta_functional(const TestFunction& f, const QuadratureConfig& qc = inner_product_config());
/// (2 G(0))^{-1} <L f, w_2>, which equals f'(0).
[[nodiscard]] double delta_prime_functional(const TestFunction& f, const QuadratureConfig& qc = inner_product_config());

/// |f(0)| / ||f||_+. Throws DomainError for f = 0.
[[nodiscard]] double boundedness_ratio(const TestFunction& f);

struct IdentityCheck {
    double lhs = 0.0;          ///< <f, L g> with L applied on each half-line
    double rhs = 0.0;          ///< <L f, g> - [g] f'(0) + [g'] f(0)
    double discrepancy = 0.0;  ///< |lhs - rhs|
};

/// Both sides of <f, L g> = <L f, g> - {g(+0) - g(-0)} f'(0) + {g'(+0) - g'(-0)} f(0)
/// for real g.
[[nodiscard]] IdentityCheck perturbation_identity_check(const PiecewiseFunction& g,
                                                        const TestFunction& f,
                                                        const QuadratureConfig& qc = inner_product_config());

/// psi_0..psi_5 followed by 20 seeded p(t) exp(-a (t - c)^2), p cubic with
/// coefficients in [-1, 1], a in [0.3, 1.5], c in [-1, 1].
[[nodiscard]] std::vector<TestFunction> test_function_suite(std::uint64_t seed = 20240611,
                                                            const QuadratureConfig& qc = inner_product_config());

/// Integration half-width for inner products.
inline constexpr double kInnerProductHalfWidth = 12.0;

/// int over [-12, 0] and [0, 12] of f_minus resp. f_plus.
[[nodiscard]] double line_integral(const std::function<double(double)>& f_minus,
                                   const std::function<double(double)>& f_plus,
                                   const QuadratureConfig& qc = inner_product_config());

} // namespace hosc
