#include "commands.hpp"

#include "verify.hpp"

#include <hosc/error.hpp>
#include <hosc/parallel.hpp>
#include <hosc/series.hpp>
#include <hosc/spectrum.hpp>

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>

namespace hosc::cli {
namespace {

constexpr double kPi = boost::math::constants::pi<double>();

Json grid_json(const std::vector<double>& grid)
{
    Json a = Json::array();
    for (double x : grid) a.push_back(number(x));
    return a;
}

std::string family_name(const Extension& ext)
{
    if (const auto* h = std::get_if<HalfLine>(&ext)) return h->side == Side::plus ? "halfline-plus" : "halfline-minus";
    return std::holds_alternative<BTheta>(ext) ? "btheta" : "ck";
}

/// int_0^inf cosh(s^2/k)^-2 ds; the integrand is below 4 exp(-2 s^2/k) < 1e-40 past s = 12.
double cosh_bound(double k)
{
    QuadratureConfig qc;
    qc.rel_tol = 1e-12;
    return integrate([k](double s) { return 1.0 / std::pow(std::cosh(s * s / k), 2); }, 0.0, 12.0, qc).value;
}

} // namespace

void RunConfig::validate() const
{
    if (!(window.first < window.second)) throw DomainError("window requires lo < hi");
    if (tol && !(*tol > 0.0)) throw DomainError("tol must be positive");
    if (threads < 1) throw DomainError("threads must be at least 1");
    if (max_count < 1) throw DomainError("max-count must be at least 1");
    hosc::validate(extension);
}

Report cmd_spectrum(const RunConfig& cfg)
{
    cfg.validate();
    SpectrumConfig sc;
    sc.tol = cfg.tol.value_or(sc.tol);
    sc.max_count = cfg.max_count;
    sc.threads = cfg.threads;
    const auto [lo, hi] = cfg.window;
    const EigenSearch found = eigenvalues_in(cfg.extension, lo, hi, sc);

    Report r;
    r.command = "spectrum";
    r.params["extension"] = to_string(cfg.extension);
    r.params["family"] = family_name(cfg.extension);
    r.params["lo"] = number(lo);
    r.params["hi"] = number(hi);
    r.params["tol"] = number(sc.tol);
    r.params["max_count"] = sc.max_count;
    r.columns = {"lambda", "residual", "bracket_lo", "bracket_hi", "method", "multiplicity"};
    double worst = 0.0;
    for (const auto& e : found.eigenvalues) {
        r.rows.push_back({e.lambda, e.residual, e.bracket.first, e.bracket.second, to_string(e.method),
                          static_cast<long long>(e.multiplicity)});
        worst = std::max(worst, e.residual);
    }
    r.residuals["count"] = found.eigenvalues.size();
    r.residuals["max_abs_secular"] = number(worst);
    r.warnings = found.warnings;
    return r;
}

Report cmd_scan_theta(const RunConfig& cfg)
{
    cfg.validate();
    if (std::holds_alternative<CK>(cfg.extension))
        throw DomainError("scan-theta supports the btheta and halfline families only");
    if (cfg.grid.empty()) throw DomainError("scan-theta needs a nonempty theta grid");
    for (double th : cfg.grid)
        if (!(th >= 0.0 && th < kPi)) throw DomainError("theta must lie in [0, pi)");

    const double tol = cfg.tol.value_or(1e-10);
    const auto solve = [&](std::size_t i) -> std::optional<EigenResult> {
        const double th = cfg.grid[i];
        if (const auto* h = std::get_if<HalfLine>(&cfg.extension))
            return negative_eigenvalue_halfline(th, h->side, {}, tol);
        return negative_eigenvalue(th, {}, tol);
    };
    const auto found = parallel_map<std::optional<EigenResult>>(cfg.grid.size(), cfg.threads, solve);

    Report r;
    r.command = "scan-theta";
    r.params["family"] = family_name(cfg.extension);
    r.params["thetas"] = grid_json(cfg.grid);
    r.params["tol"] = number(tol);
    r.columns = {"theta", "lambda", "omega", "method"};
    double worst_increase = 0.0;
    std::optional<double> prev;
    for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
        const auto& e = found[i];
        if (!e) {
            r.rows.push_back({cfg.grid[i], std::monostate{}, std::monostate{}, std::monostate{}});
            continue;
        }
        r.rows.push_back({cfg.grid[i], e->lambda, std::sqrt(std::max(0.0, -e->lambda)), to_string(e->method)});
        if (prev && cfg.grid[i] > cfg.grid[i - 1]) worst_increase = std::max(worst_increase, e->lambda - *prev);
        prev = e->lambda;
    }
    r.residuals["max_increase"] = number(worst_increase);
    r.residuals["strictly_decreasing"] = worst_increase == 0.0;
    return r;
}

Report cmd_g(const RunConfig& cfg)
{
    cfg.validate();
    if (cfg.grid.empty()) throw DomainError("g needs a nonempty omega grid");
    for (double w : cfg.grid)
        if (!(w >= 0.0 && w <= 64.0)) throw DomainError("omega must lie in [0, 64]");

    const double a_A = alpha_A();
    const double a_B = alpha_B();
    const auto gs = parallel_map<double>(cfg.grid.size(), cfg.threads, [&](std::size_t i) { return eval_G(cfg.grid[i]); });

    Report r;
    r.command = "g";
    r.params["omegas"] = grid_json(cfg.grid);
    r.columns = {"omega", "G", "alpha_A", "alpha_B"};
    double worst_increase = 0.0;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        r.rows.push_back({cfg.grid[i], gs[i], a_A, a_B});
        if (i > 0 && cfg.grid[i] > cfg.grid[i - 1]) worst_increase = std::max(worst_increase, gs[i] - gs[i - 1]);
    }
    const double g0 = eval_G(0.0);
    const double lower = cosh_bound(2.0);
    const double upper = cosh_bound(3.0);
    r.residuals["max_increase"] = number(worst_increase);
    r.residuals["decreasing"] = worst_increase == 0.0;
    r.residuals["g0"] = number(g0);
    r.residuals["g0_lower"] = number(lower);
    r.residuals["g0_upper"] = number(upper);
    r.residuals["g0_in_bracket"] = lower < g0 && g0 < upper;
    return r;
}

Report cmd_verify(const RunConfig& cfg)
{
    if (cfg.tol && !(*cfg.tol > 0.0)) throw DomainError("tol must be positive");
    if (cfg.only) {
        const auto mods = module_names();
        if (std::find(mods.begin(), mods.end(), *cfg.only) == mods.end())
            throw DomainError("unknown module '" + *cfg.only + "'");
    }
    const auto outcomes = run_invariants(cfg.only, cfg.tol.value_or(0.0));

    Report r;
    r.command = "verify";
    r.params["only"] = cfg.only ? Json(*cfg.only) : Json(nullptr);
    r.params["tol"] = cfg.tol ? number(*cfg.tol) : Json(nullptr);
    r.columns = {"module", "invariant", "residual", "threshold", "pass", "detail"};
    for (const auto& o : outcomes) {
        r.rows.push_back({o.module, o.name, o.residual, o.threshold, o.pass, o.detail});
        r.residuals[o.module + "." + o.name] = number(o.residual);
        r.ok = r.ok && o.pass;
    }
    return r;
}

Report run(const RunConfig& cfg)
{
    switch (cfg.command) {
    case Command::spectrum: return cmd_spectrum(cfg);
    case Command::scan_theta: return cmd_scan_theta(cfg);
    case Command::g: return cmd_g(cfg);
    case Command::verify: return cmd_verify(cfg);
    }
    throw DomainError("unknown command");
}

} // namespace hosc::cli
