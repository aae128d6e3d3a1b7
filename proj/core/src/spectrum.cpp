#include <hosc/spectrum.hpp>

#include <hosc/error.hpp>
#include <hosc/ode.hpp>
#include <hosc/parallel.hpp>
#include <hosc/series.hpp>

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>

namespace hosc {
namespace {

using cd = std::complex<double>;

std::string fmt(const char* pattern, double x)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, x);
    return buf;
}

// Coefficients of det M = sum c_pq p_- q_+, p, q in {y, y'}, for the CK rows.
struct Plucker {
    cd aa, ab, ba, bb;  // a_- a_+, a_- b_+, b_- a_+, b_- b_+
};

Plucker plucker(const Eigen::Matrix<cd, 2, 4>& r)
{
    return {r(0, 0) * r(1, 2) - r(0, 2) * r(1, 0), r(0, 0) * r(1, 3) - r(0, 3) * r(1, 0),
            r(0, 1) * r(1, 2) - r(0, 2) * r(1, 1), r(0, 1) * r(1, 3) - r(0, 3) * r(1, 1)};
}

cd largest_phase(std::initializer_list<cd> cs)
{
    cd best = 0.0;
    for (cd c : cs)
        if (std::abs(c) > std::abs(best)) best = c;
    return best == 0.0 ? cd(1.0) : best / std::abs(best);
}

struct Root {
    double lambda;
    double residual;
    double lo, hi;
    std::size_t sector;
};

Root refine(const Extension& ext, std::size_t sector, double l, double fl, double r, double fr,
            const SpectrumConfig& cfg)
{
    const auto f = [&](double x) { return secular(ext, x, cfg.ode_tol).sectors[sector]; };
    if (fl == 0.0) return {l, 0.0, l, l, sector};
    if (fr == 0.0) return {r, 0.0, r, r, sector};
    while (r - l > cfg.tol) {
        const double m = 0.5 * (l + r);
        if (m <= l || m >= r) break;
        const double fm = f(m);
        if (fm == 0.0) return {m, 0.0, l, r, sector};
        if ((fm < 0.0) == (fl < 0.0)) {
            l = m;
            fl = fm;
        } else {
            r = m;
            fr = fm;
        }
    }
    double x = 0.5 * (l + r);
    const double s = r - fr * (r - l) / (fr - fl);
    if (std::isfinite(s) && s >= l && s <= r) x = s;
    return {x, std::abs(f(x)), l, r, sector};
}

std::optional<EigenResult> invert_G(double target, double tol, const QuadratureConfig& qc)
{
    // G is strictly decreasing from G(0) to G(64).
    const double g_max = eval_G(kMaxOmega, qc);
    if (target < g_max)
        throw NumericError("negative eigenvalue lies below -4096, outside the certified omega range");
    const auto h = [&](double w) { return eval_G(w, qc) - target; };
    const auto done = [tol](double a, double b) { return 2.0 * std::max(a, b) * (b - a) < tol; };
    const auto [a, b] = boost::math::tools::bisect(h, 0.0, kMaxOmega, done);
    const double w = 0.5 * (a + b);
    EigenResult res;
    res.lambda = -w * w;
    res.residual = std::abs(h(w));
    res.bracket = {-b * b, -a * a};
    res.method = Method::g_omega_inversion;
    return res;
}

bool at_threshold(double theta, double threshold)
{
    return std::abs(theta - threshold) <= 8.0 * std::numeric_limits<double>::epsilon() * std::numbers::pi;
}

EigenResult zero_eigenvalue()
{
    EigenResult r;
    r.method = Method::g_omega_inversion;
    return r;
}

} // namespace

std::string to_string(Method m)
{
    switch (m) {
    case Method::secular_root: return "secular_root";
    case Method::g_omega_inversion: return "g_omega_inversion";
    case Method::analytic_known: return "analytic_known";
    }
    return "unknown";
}

SecularSample secular(const Extension& ext, double lambda, double ode_tol)
{
    validate(ext);
    const L2Solution y = build_l2_solution(lambda, Side::plus, ode_tol);
    const double a = y.value0;
    const double b = y.dvalue0;   // y_+ = (a, b), y_- = (a, -b)

    SecularSample s;
    s.lambda = lambda;
    s.boundary_dir = {a, b};
    if (const auto* h = std::get_if<HalfLine>(&ext)) {
        const double bs = h->side == Side::plus ? b : -b;
        s.sectors = {std::cos(h->theta) * a - std::sin(h->theta) * bs};
        s.det_value = s.sectors[0];
    } else if (const auto* bt = std::get_if<BTheta>(&ext)) {
        const double even = std::numbers::sqrt2 * std::cos(bt->theta) * a - 2.0 * std::sin(bt->theta) * b;
        s.sectors = {even, a};
        s.det_value = even * a;
    } else {
        const auto rows = ck_rows(k_matrix(std::get<CK>(ext)));
        const double am = a, bm = -b, ap = a, bp = b;
        if (std::abs(rows(0, 2)) + std::abs(rows(0, 3)) + std::abs(rows(1, 0)) + std::abs(rows(1, 1)) <
            1e-12) {
            // separated: one condition per side
            const cd m = rows(0, 0) * am + rows(0, 1) * bm;
            const cd p = rows(1, 2) * ap + rows(1, 3) * bp;
            const cd gm = largest_phase({rows(0, 0), rows(0, 1)});
            const cd gp = largest_phase({rows(1, 2), rows(1, 3)});
            const cd rm = m / gm, rp = p / gp;
            s.sectors = {rm.real(), rp.real()};
            s.det_value = rm.real() * rp.real();
            const double mag = std::abs(rm) + std::abs(rp);
            s.imag_defect = mag > 0.0 ? (std::abs(rm.imag()) + std::abs(rp.imag())) / mag : 0.0;
        } else {
            const Plucker c = plucker(rows);
            const cd det = c.aa * am * ap + c.ab * am * bp + c.ba * bm * ap + c.bb * bm * bp;
            const cd rot = det / largest_phase({c.aa, c.ab, c.ba, c.bb});
            s.sectors = {rot.real()};
            s.det_value = rot.real();
            s.imag_defect = std::abs(det) > 0.0 ? std::abs(rot.imag()) / std::abs(det) : 0.0;
        }
    }
    return s;
}

EigenSearch eigenvalues_in(const Extension& ext, double lo, double hi, const SpectrumConfig& cfg)
{
    validate(ext);
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw DomainError("eigenvalue window needs finite lo < hi");
    if (!(cfg.tol > 0.0) || !(cfg.scan_step > 0.0) || !(cfg.ode_tol > 0.0))
        throw DomainError("tolerances and scan step must be positive");
    if (cfg.max_count < 1) throw DomainError("max_count must be >= 1");

    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / cfg.scan_step));
    const auto grid_at = [&](std::size_t k) {
        return k == n ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n);
    };
    const auto samples = parallel_map<SecularSample>(
        n + 1, cfg.threads, [&](std::size_t k) { return secular(ext, grid_at(k), cfg.ode_tol); });

    EigenSearch out;
    struct Bracket {
        std::size_t sector, k;
    };
    std::vector<Bracket> brackets;
    const std::size_t n_sectors = samples.front().sectors.size();
    for (std::size_t s = 0; s < n_sectors; ++s) {
        for (std::size_t k = 0; k + 1 <= n; ++k) {
            const double v0 = samples[k].sectors[s];
            const double v1 = samples[k + 1].sectors[s];
            if (v0 == 0.0 && k > 0) continue;  // counted by the previous interval
            if (v0 == 0.0 || v1 == 0.0 || (v0 < 0.0) != (v1 < 0.0)) brackets.push_back({s, k});
        }
        for (std::size_t k = 1; k < n; ++k) {
            const double a = samples[k - 1].sectors[s];
            const double m = samples[k].sectors[s];
            const double b = samples[k + 1].sectors[s];
            const bool same = (a < 0.0) == (m < 0.0) && (m < 0.0) == (b < 0.0) && a != 0.0 && m != 0.0 && b != 0.0;
            if (same && std::abs(m) < std::abs(a) && std::abs(m) < std::abs(b) &&
                std::abs(m) < 0.05 * std::max(std::abs(a), std::abs(b)))
                out.warnings.push_back(fmt("scan resolution: possible unresolved root pair near lambda = %.6g", grid_at(k)));
        }
    }

    auto roots = parallel_map<Root>(brackets.size(), cfg.threads, [&](std::size_t i) {
        const auto [s, k] = brackets[i];
        return refine(ext, s, grid_at(k), samples[k].sectors[s], grid_at(k + 1),
                      samples[k + 1].sectors[s], cfg);
    });
    std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) { return x.lambda < y.lambda; });

    const double merge = std::max(10.0 * cfg.tol, 1e-7);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        EigenResult e{roots[i].lambda, roots[i].residual, {roots[i].lo, roots[i].hi}, Method::secular_root, 1};
        std::vector<std::size_t> sectors{roots[i].sector};
        while (i + 1 < roots.size() && roots[i + 1].lambda - roots[i].lambda <= merge) {
            ++i;
            if (std::find(sectors.begin(), sectors.end(), roots[i].sector) == sectors.end()) {
                sectors.push_back(roots[i].sector);
                e.lambda = 0.5 * (e.lambda + roots[i].lambda);
                e.residual = std::max(e.residual, roots[i].residual);
                e.bracket = {std::min(e.bracket.first, roots[i].lo), std::max(e.bracket.second, roots[i].hi)};
            }
        }
        e.multiplicity = static_cast<int>(sectors.size());
        if (!out.eigenvalues.empty() && e.lambda - out.eigenvalues.back().lambda < cfg.scan_step)
            out.warnings.push_back(fmt("scan resolution: eigenvalues closer than the scan step near lambda = %.6g", e.lambda));
        out.eigenvalues.push_back(e);
    }
    if (static_cast<int>(out.eigenvalues.size()) > cfg.max_count) {
        out.eigenvalues.resize(static_cast<std::size_t>(cfg.max_count));
        out.warnings.push_back("max_count reached; later eigenvalues dropped");
    }
    return out;
}

std::optional<EigenResult> negative_eigenvalue(double theta, const QuadratureConfig& qc, double tol)
{
    validate(BTheta{theta});
    const double threshold = std::numbers::pi - alpha_B(qc);
    if (at_threshold(theta, threshold)) return zero_eigenvalue();
    if (theta < threshold) return std::nullopt;
    return invert_G(-std::numbers::sqrt2 * std::tan(theta), tol, qc);
}

std::optional<EigenResult> negative_eigenvalue_halfline(double theta, Side side,
                                                        const QuadratureConfig& qc, double tol)
{
    validate(HalfLine{side, theta});
    if (side == Side::minus) {
        if (theta == 0.0) return std::nullopt;
        return negative_eigenvalue_halfline(symmetry_map(theta, side).first, Side::plus, qc, tol);
    }
    const double threshold = std::numbers::pi - alpha_A(qc);
    if (at_threshold(theta, threshold)) return zero_eigenvalue();
    if (theta < threshold) return std::nullopt;
    return invert_G(-std::tan(theta), tol, qc);
}

double form_positivity(const GridFunction& f, Side side)
{
    const SideSamples s = side_samples(f, side);
    double scale = 0.0;
    for (std::size_t i = 0; i < s.t.size(); ++i)
        scale = std::max({scale, std::abs(s.values[i]), std::abs(s.d_values[i])});
    if (scale == 0.0) throw DomainError("form_positivity needs a nonzero function");
    const std::size_t m = s.t.size();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j : {i, m - 1 - i})
            if (std::abs(s.values[j]) > 1e-10 * scale || std::abs(s.d_values[j]) > 1e-10 * scale)
                throw DomainError("form_positivity: f must vanish near 0 and near the grid end");

    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i)
        y[i] = s.d_values[i] * s.d_values[i] + s.t[i] * s.t[i] * s.values[i] * s.values[i];
    return simpson(y, s.step);
}

} // namespace hosc
