#pragma once

#include <hosc/grid.hpp>

#include <optional>

namespace hosc {

struct OdeConfig {
    /// Seeding abscissa; 0 selects sqrt(2 max(lambda, 0) + 1) + 6.
    double start_T = 0.0;
    /// Tabulate y on [0, start_T] with this step (the default grid step).
    bool tabulate = false;
    double sample_step = kDefaultStep;
    /// Skip the doubled-start_T rerun. The direction is then unchecked and
    /// error_estimate is 0.
    bool check_projective = true;
};

/**
 * The solution of -y''/2 + t^2 y/2 = lambda y that is square integrable at
 * the far end of one half-line. Only the direction (value0 : dvalue0) is
 * meaningful; the scale is sup|y| = 1 over [0, start_T].
 */
struct L2Solution {
    double lambda = 0.0;
    Side side = Side::plus;
    double start_T = 0.0;
    double value0 = 0.0;    ///< y(+-0)
    double dvalue0 = 0.0;   ///< y'(+-0)
    /// Projective distance |a b' - a' b| / (|(a,b)| |(a',b')|) to the run with
    /// start_T doubled.
    double error_estimate = 0.0;
    /// Samples on the solution's own half-line (the other side left empty).
    std::optional<GridFunction> samples;
};

/// Integrates from start_T toward 0 with a controlled Runge-Kutta-Fehlberg
/// 7(8) stepper (local error <= tol/10), seeded with y = 1,
/// y' = -sqrt(T^2 - 2 lambda). side = minus is the mirror image
/// (y_-(t) = y_+(-t)). Throws NumericError on step-size underflow or when
/// doubling start_T moves the direction by more than tol, DomainError when
/// start_T does not clear the turning point.
[[nodiscard]] L2Solution build_l2_solution(double lambda, Side side, double tol,
                                           const OdeConfig& cfg = {});

/// Even extension y(x) = y_+(|x|) of a tabulated plus-side solution.
[[nodiscard]] GridFunction mirror_extend(const L2Solution& y);

} // namespace hosc
