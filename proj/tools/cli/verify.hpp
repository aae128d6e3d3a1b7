#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hosc::cli {

/// A named property whose measured residual must not exceed `threshold`.
struct Invariant {
    std::string module;
    std::string name;
    double threshold = 0.0;
    std::function<double()> residual;
};

struct Outcome {
    std::string module;
    std::string name;
    double residual = 0.0;   ///< NaN when the check threw
    double threshold = 0.0;  ///< after loosening
    bool pass = false;
    std::string detail;
};

[[nodiscard]] const std::vector<Invariant>& invariant_registry();
[[nodiscard]] std::vector<std::string> module_names();

/// Runs the registry (or one module of it) in registration order; each
/// threshold becomes max(threshold, loosen).
[[nodiscard]] std::vector<Outcome> run_invariants(const std::optional<std::string>& only, double loosen);

} // namespace hosc::cli
