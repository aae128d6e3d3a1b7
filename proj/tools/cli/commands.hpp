#pragma once

#include "report.hpp"

#include <hosc/extensions.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hosc::cli {

enum class Command { spectrum, scan_theta, g, verify };
enum class Format { json, csv };

struct RunConfig {
    Command command = Command::spectrum;
    Extension extension = BTheta{1.5707963267948966};
    std::pair<double, double> window{-60.0, 20.25};
    /// Unset: each command's own default (spectrum root tolerance 1e-9,
    /// verify thresholds unchanged).
    std::optional<double> tol;
    Format format = Format::json;
    std::optional<std::string> output_path;
    int threads = 1;
    int max_count = 64;
    /// scan-theta: theta grid; g: omega grid.
    std::vector<double> grid;
    std::optional<std::string> only;

    /// window.first < window.second, tol > 0, threads >= 1, max_count >= 1.
    void validate() const;
};

/// Each command throws DomainError for bad input and NumericError when a
/// computation fails; Report::ok is false only for verify failures.
[[nodiscard]] Report cmd_spectrum(const RunConfig& cfg);
/// Rows (theta, lambda, omega, method); lambda is null below the threshold.
[[nodiscard]] Report cmd_scan_theta(const RunConfig& cfg);
/// Rows (omega, G, alpha_A, alpha_B).
[[nodiscard]] Report cmd_g(const RunConfig& cfg);
[[nodiscard]] Report cmd_verify(const RunConfig& cfg);

[[nodiscard]] Report run(const RunConfig& cfg);

} // namespace hosc::cli
