#pragma once

#include <hosc/grid.hpp>

#include <vector>

namespace hosc {

inline constexpr int kMaxHermiteIndex = 60;
inline constexpr int kMaxLadderIndex = 8;
/// |t| bound for phi_plus / phi_minus / phi_one.
inline constexpr double kPhiGuard = 8.0;

/**
 * psi_n(t) = c_n exp(-t^2/2) H_n(t),  c_n = (sqrt(pi) 2^n n!)^{-1/2}.
 * psi_0 = pi^{-1/4} exp(-t^2/2) is the normalized ground state.
 */
struct HermiteFunction {
    int n = 0;
    /// H_n coefficients by ascending power. Integer-valued, but entries past
    /// 2^53 are rounded.
    std::vector<double> poly_coeffs;
    double log_norm_const = 0.0;   ///< log c_n

    [[nodiscard]] double norm_const() const;
    /// H_n(t) by H_{k+1} = 2t H_k - 2k H_{k-1}.
    [[nodiscard]] double poly(double t) const;
    /// psi_n(t) by the normalized three-term recurrence (no overflow for n <= 60).
    [[nodiscard]] double value(double t) const;
    /// psi_n'(t) = -t psi_n(t) + sqrt(2n) psi_{n-1}(t).
    [[nodiscard]] double derivative(double t) const;
    /// psi_n'' = (t^2 - 2n - 1) psi_n.
    [[nodiscard]] double second_derivative(double t) const;
};

/// Throws DomainError for n < 0 or n > 60.
[[nodiscard]] HermiteFunction psi(int n);

[[nodiscard]] GridFunction tabulate(const HermiteFunction& h, const std::vector<double>& grid);

/// (t - d/dt) f on each side. The output derivative differentiates f' with
/// fourth-order differences (O(h^4) interior, O(h^4) one-sided at the ends).
/// Needs uniform spacing and >= 5 points per side.
[[nodiscard]] GridFunction ladder_raise(const GridFunction& f);
/// (d/dt + t) f, same accuracy as ladder_raise.
[[nodiscard]] GridFunction ladder_lower(const GridFunction& f);

/// Ladder maps for f with A f = lambda f on each side: f'' = (t^2 - 2 lambda) f
/// replaces differencing, so the output carries no discretization error.
/// The image solves A g = (lambda + 1) g (raise) or (lambda - 1) g (lower).
[[nodiscard]] GridFunction ladder_raise(const GridFunction& f, double lambda);
[[nodiscard]] GridFunction ladder_lower(const GridFunction& f, double lambda);

/// phi_+(t) = exp(t^2/2) int_t^inf exp(-s^2) ds, |t| <= 8.
[[nodiscard]] double phi_plus(double t);
/// phi_+'(t) = t phi_+(t) - exp(-t^2/2).
[[nodiscard]] double phi_plus_prime(double t);
/// phi_-(t) = phi_+(-t).
[[nodiscard]] double phi_minus(double t);
[[nodiscard]] double phi_minus_prime(double t);
/// phi_1(t) = exp(t^2/2).
[[nodiscard]] double phi_one(double t);
[[nodiscard]] double phi_one_prime(double t);

struct LadderResult {
    GridFunction u;
    /// max deviation from a long double rerun of the chain, relative to ||u||_inf.
    double error_estimate = 0.0;
};

/// u_n = (d/dt + t)^n phi_+ on t > 0 and (d/dt + t)^n phi_- on t < 0, by n
/// applications of ladder_lower(., lambda) along lambda = -1/2, -3/2, ...
/// The grid must lie in [-8, 8]. Throws NumericError when the error
/// estimate exceeds `budget`.
[[nodiscard]] LadderResult ladder_eigenfunction(int n, const std::vector<double>& grid,
                                                double budget = 1e-6);

/// Default grid for ladder_eigenfunction: step 1/512 on [-8, 8].
[[nodiscard]] std::vector<double> ladder_grid();

} // namespace hosc
