#include "app.hpp"

#include "commands.hpp"

#include <hosc/error.hpp>
#include <hosc/version.hpp>

#include <CLI11.hpp>

#include <boost/math/constants/constants.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace hosc::cli {
namespace {

constexpr double kPi = boost::math::constants::pi<double>();

struct ExtensionFlags {
    std::string family = "btheta";
    std::optional<double> theta, phi, alpha, beta1, beta2;
    std::optional<std::string> ext;
};

Extension build_extension(const ExtensionFlags& f)
{
    if (f.ext) return parse_extension(*f.ext);
    const auto need = [](const std::optional<double>& v, const char* name) {
        if (!v) throw DomainError(std::string("--") + name + " is required for this family");
        return *v;
    };
    Extension e;
    if (f.family == "btheta") e = BTheta{need(f.theta, "theta")};
    else if (f.family == "halfline-plus") e = HalfLine{Side::plus, need(f.theta, "theta")};
    else if (f.family == "halfline-minus") e = HalfLine{Side::minus, need(f.theta, "theta")};
    else if (f.family == "ck")
        e = CK{need(f.phi, "phi"), need(f.alpha, "alpha"), need(f.beta1, "beta1"), need(f.beta2, "beta2")};
    else throw DomainError("unknown family '" + f.family + "'");
    validate(e);
    return e;
}

std::vector<double> linspace(double lo, double hi, int n)
{
    if (n < 1) throw DomainError("samples must be at least 1");
    if (n == 1) return {lo};
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return g;
}

int default_threads()
{
    const char* env = std::getenv("OSC_THREADS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 1024) throw DomainError("OSC_THREADS must be a positive integer");
    return static_cast<int>(n);
}

} // namespace

int main(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spectra of selfadjoint point perturbations of the harmonic oscillator"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    RunConfig cfg;
    ExtensionFlags ef;
    std::string format = "json";
    std::optional<std::string> out_path;
    std::optional<int> threads;
    std::optional<double> tol;
    double lo = -60.0, hi = 20.25;
    int max_count = 64;
    double theta_lo = 0.0, theta_hi = kPi - 0.05, omega_lo = 0.0, omega_hi = 8.0;
    int samples = 0;
    std::vector<double> thetas, omegas;
    std::optional<std::string> only;

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--tol", tol, "Tolerance (root width, or loosened verify thresholds)");
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", out_path, "Write output to PATH instead of stdout");
        sub->add_option("--threads", threads, "Worker threads (default: OSC_THREADS or 1)");
    };
    const auto extension = [&](CLI::App* sub) {
        sub->add_option("--family", ef.family, "btheta, halfline-plus, halfline-minus or ck");
        sub->add_option("--theta", ef.theta, "theta in [0, pi)");
        sub->add_option("--phi", ef.phi);
        sub->add_option("--alpha", ef.alpha);
        sub->add_option("--beta1", ef.beta1);
        sub->add_option("--beta2", ef.beta2);
        sub->add_option("--ext", ef.ext, "Serialized extension, e.g. \"family=btheta theta=1.2\"");
    };

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of one extension in [lo, hi]");
    extension(spectrum);
    common(spectrum);
    spectrum->add_option("--lo", lo, "Window lower end");
    spectrum->add_option("--hi", hi, "Window upper end");
    spectrum->add_option("--max-count", max_count, "Maximum number of eigenvalues reported");

    auto* scan = app.add_subcommand("scan-theta", "Negative eigenvalue along a theta grid");
    scan->add_option("--family", ef.family, "btheta, halfline-plus or halfline-minus");
    common(scan);
    scan->add_option("--theta-lo", theta_lo, "First theta");
    scan->add_option("--theta-hi", theta_hi, "Last theta");
    scan->add_option("--samples", samples, "Number of equally spaced thetas (default 64)");
    scan->add_option("--thetas", thetas, "Explicit theta list")->delimiter(',');

    auto* g = app.add_subcommand("g", "G(omega) with the thresholds alpha_A, alpha_B");
    common(g);
    g->add_option("--omega-lo", omega_lo, "First omega");
    g->add_option("--omega-hi", omega_hi, "Last omega");
    g->add_option("--samples", samples, "Number of equally spaced omegas (default 17)");
    g->add_option("--omegas", omegas, "Explicit omega list")->delimiter(',');

    auto* verify = app.add_subcommand("verify", "Run the invariant suite");
    common(verify);
    verify->add_option("--only", only, "Restrict to one module");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.tol = tol;
        cfg.format = format == "csv" ? Format::csv : Format::json;
        cfg.output_path = out_path;
        cfg.threads = threads ? *threads : default_threads();
        cfg.max_count = max_count;
        cfg.window = {lo, hi};
        cfg.only = only;
        if (spectrum->parsed()) {
            cfg.command = Command::spectrum;
            cfg.extension = build_extension(ef);
        } else if (scan->parsed()) {
            cfg.command = Command::scan_theta;
            if (ef.family != "btheta" && ef.family != "halfline-plus" && ef.family != "halfline-minus")
                throw DomainError("scan-theta supports btheta, halfline-plus and halfline-minus");
            ef.theta = 0.0;
            cfg.extension = build_extension(ef);
            cfg.grid = thetas.empty() ? linspace(theta_lo, theta_hi, samples ? samples : 64) : thetas;
        } else if (g->parsed()) {
            cfg.command = Command::g;
            cfg.grid = omegas.empty() ? linspace(omega_lo, omega_hi, samples ? samples : 17) : omegas;
        } else {
            cfg.command = Command::verify;
        }

        const Report r = run(cfg);
        for (const auto& w : r.warnings) err << "warning: " << w << "\n";
        const std::string text = cfg.format == Format::csv ? to_csv(r) : to_json(r);
        if (cfg.output_path) {
            std::ofstream f(*cfg.output_path, std::ios::binary);
            if (!f) throw DomainError("cannot open '" + *cfg.output_path + "' for writing");
            f << text;
        } else {
            out << text;
        }
        if (!r.ok) {
            err << "error: verify reported failing invariants\n";
            return 3;
        }
        return 0;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 3;
    }
}

int main(int argc, char** argv)
{
    return main(argc, argv, std::cout, std::cerr);
}

} // namespace hosc::cli
