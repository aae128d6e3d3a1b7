#pragma once

#include <hosc/quadrature.hpp>

#include <array>
#include <cmath>
#include <vector>

namespace hosc {

/// Largest frequency accepted by the series module; beyond it u(t, omega)
/// leaves double range on the intervals the quadratures need.
inline constexpr double kMaxOmega = 64.0;

/**
 * Even power-series solution of  -u''/2 + t^2 u/2 = -omega^2 u,  u(0) = 1,
 * u'(0) = 0, i.e.  u(t) = sum_k a_{2k} t^{2k}  with
 *
 *     a_0 = 1,  a_2 = omega^2,
 *     a_{2k+2} = (2 omega^2 a_{2k} + a_{2k-2}) / ((2k+2)(2k+1)).
 *
 * Every coefficient obeys a_{2k} <= q / k!, which certifies truncation
 * error. q can be astronomically large for big omega, so only log q is kept.
 */
struct SeriesSolution {
    double omega = 0.0;
    std::vector<double> coeffs;   ///< coeffs[k] = a_{2k}(omega)
    double log_q_bound = 0.0;     ///< log q(omega)
    int n0 = 1;                   ///< the factorial bound propagates for k >= n0

    [[nodiscard]] double q_bound() const { return std::exp(log_q_bound); }
    [[nodiscard]] int size() const { return static_cast<int>(coeffs.size()); }
};

/// Smallest n >= 1 with omega^2/(2m+1) + m/(2(2m+1)) < 1 for all m >= n.
[[nodiscard]] int certified_index(double omega);

/// Coefficients a_0 .. a_{2(n_terms-1)} together with q(omega) and n0.
/// Rejects omega outside [0, kMaxOmega] and n_terms < max(3, n0 + 1).
[[nodiscard]] SeriesSolution build_series(double omega, int n_terms);

/// Number of terms whose certified tail at t_max is below rel_tol (relative to
/// u >= 1). Always at least the minimum build_series accepts.
[[nodiscard]] int required_terms(double omega, double t_max, double rel_tol);

/// u(t, omega). Truncates once the last term is below rel_tol/10 of the
/// partial sum and the factorial tail bound is below rel_tol of it.
/// Throws NumericError if the stored coefficients run out first.
[[nodiscard]] double eval_u(const SeriesSolution& s, double t, double rel_tol = 1e-15);

/// du/dt by the term-wise derivative; exactly 0 at t = 0.
[[nodiscard]] double eval_u_prime(const SeriesSolution& s, double t, double rel_tol = 1e-15);

/// v(t, omega) = u(t) * int_t^inf u(s)^-2 ds, the solution decaying at +inf.
/// The series is extended internally when it does not reach the cutoff.
[[nodiscard]] double eval_v(const SeriesSolution& s, double t, const QuadratureConfig& qc = {});

/// dv/dt = u'(t) int_t^inf u^-2 - 1/u(t).
[[nodiscard]] double eval_v_prime(const SeriesSolution& s, double t,
                                  const QuadratureConfig& qc = {});

/// G(omega) = v(0, omega) = int_0^inf u(s, omega)^-2 ds.
[[nodiscard]] double eval_G(double omega, const QuadratureConfig& qc = {});

/// arctan G(0): the half-line threshold angle.
[[nodiscard]] double alpha_A(const QuadratureConfig& qc = {});
/// arctan(G(0)/sqrt 2): the threshold angle of the delta-coupled family.
[[nodiscard]] double alpha_B(const QuadratureConfig& qc = {});

/// Truncation point of int_t^inf (u(t)/u(s))^2 ds.
struct DecayCutoff {
    double cutoff = 0.0;     ///< S
    double tail_bound = 0.0; ///< certified bound on the discarded tail
};

/// Picks S where the smaller of two majorants of the scaled tail drops below
/// `budget`:  sech^2(kappa (s - t)) with kappa^2 = t^2 + 2 omega^2, and
/// u(t)^2 sech^2(s^2/3).
[[nodiscard]] DecayCutoff decay_cutoff(double omega, double t, double u_at_t, double budget);

/// v(., omega) and its derivative on [0, t_max] from one shared series.
class DecayingSolution {
public:
    explicit DecayingSolution(double omega, double t_max = 14.0, QuadratureConfig qc = {});

    [[nodiscard]] double value(double t) const;
    [[nodiscard]] double derivative(double t) const;
    /// -v''/2 + t^2 v/2 + omega^2 v = 0, so v'' follows without differencing.
    [[nodiscard]] double second_derivative(double t) const;
    /// (v, v') at ascending nodes in [0, t_max], sharing one pass: the scaled
    /// tail J(t) = int_t^inf (u(t)/u(s))^2 ds is accumulated from the last node
    /// inward, one quadrature per gap.
    [[nodiscard]] std::vector<std::array<double, 2>> tabulate(const std::vector<double>& ts) const;
    [[nodiscard]] double omega() const { return series_.omega; }
    [[nodiscard]] const SeriesSolution& series() const { return series_; }

private:
    SeriesSolution series_;
    QuadratureConfig qc_;
    double t_max_;
};

} // namespace hosc
