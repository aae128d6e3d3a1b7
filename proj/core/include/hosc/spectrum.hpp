#pragma once

#include <hosc/extensions.hpp>
#include <hosc/grid.hpp>
#include <hosc/quadrature.hpp>

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hosc {

/**
 * Secular function of an extension at lambda. Eigenvalues are the zeros of
 * det_value; `sectors` factor it where the problem decouples so that each
 * factor has simple, sign-changing zeros:
 *   HalfLine        {cos th y(+-0) - sin th y'(+-0)}
 *   BTheta          {even: sqrt2 cos th y(0) - 2 sin th y'(+0),  odd: y(0)}
 *   CK, coupled     {Re(e^{-i g} det)}, g the phase of the largest coefficient
 *   CK, separated   {minus-side condition, plus-side condition}
 */
struct SecularSample {
    double lambda = 0.0;
    double det_value = 0.0;
    std::vector<double> sectors;
    /// (y(+0), y'(+0)) of the plus-side L2 solution, sup-normalized.
    std::array<double, 2> boundary_dir{};
    /// |Im| / |det| of the rotated CK determinant (0 for the real families).
    double imag_defect = 0.0;
};

enum class Method { secular_root, g_omega_inversion, analytic_known };

[[nodiscard]] std::string to_string(Method m);

struct EigenResult {
    double lambda = 0.0;
    double residual = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};
    Method method = Method::secular_root;
    /// 2 only where two sectors share a root (BTheta{0}, separated CK with
    /// equal side conditions).
    int multiplicity = 1;
};

struct SpectrumConfig {
    double tol = 1e-9;          ///< |delta lambda| of refined roots
    double ode_tol = 1e-10;
    double scan_step = 0.05;
    int max_count = 64;
    int threads = 1;
};

struct EigenSearch {
    std::vector<EigenResult> eigenvalues;  ///< ascending
    std::vector<std::string> warnings;
};

inline constexpr double kDefaultWindowLo = -60.0;
inline constexpr double kDefaultWindowHi = 20.25;

[[nodiscard]] SecularSample secular(const Extension& ext, double lambda, double ode_tol = 1e-10);

/// All sign-changing zeros of the sectors in [lo, hi]: scan, bisection to
/// tol, one secant polish. Roots closer than scan_step may be missed; a
/// warning is added where the scan sees a near-touching minimum.
[[nodiscard]] EigenSearch eigenvalues_in(const Extension& ext, double lo, double hi,
                                         const SpectrumConfig& cfg = {});

/// The negative eigenvalue of BTheta{theta}: none for theta < pi - alpha_B,
/// 0 at theta = pi - alpha_B, otherwise -omega^2 with
/// tan(theta) = -G(omega)/sqrt2. Throws NumericError when omega would exceed 64.
[[nodiscard]] std::optional<EigenResult> negative_eigenvalue(double theta,
                                                             const QuadratureConfig& qc = {},
                                                             double tol = 1e-10);

/// Same for HalfLine{side, theta}: tan(theta) = -G(omega) on the plus side
/// (threshold pi - alpha_A), tan(theta) = G(omega) on the minus side
/// (threshold alpha_A).
[[nodiscard]] std::optional<EigenResult>
negative_eigenvalue_halfline(double theta, Side side, const QuadratureConfig& qc = {},
                             double tol = 1e-10);

/// int |f'|^2 + t^2 |f|^2 over one half-line by Simpson on the grid. f must
/// vanish (with f') at 0 and at the far end of that side.
[[nodiscard]] double form_positivity(const GridFunction& f, Side side);

} // namespace hosc
