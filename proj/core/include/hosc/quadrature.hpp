#pragma once

#include <functional>

namespace hosc {

/// Error contract shared by every adaptive integral in the library.
struct QuadratureConfig {
    double rel_tol = 1e-13;
    double abs_tol = 1e-15;
    int max_subdivisions = 4096;
    /// Fraction of abs_tol that a truncated improper-integral tail may use.
    double cutoff_margin = 0.1;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod (10/21) integration of a smooth integrand on [a, b].
/// Throws NumericError when max(abs_tol, rel_tol*|I|) is not reached within
/// max_subdivisions bisections.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& qc);

} // namespace hosc
