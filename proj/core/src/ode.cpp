#include <hosc/ode.hpp>

#include <hosc/error.hpp>

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace hosc {
namespace {

using State = std::array<double, 2>;
namespace odeint = boost::numeric::odeint;

struct Trace {
    double value0 = 0.0;
    double dvalue0 = 0.0;
    double log_sup = 0.0;               ///< log sup|y| in seed units
    std::vector<double> t, y, dy;       ///< ascending t, seed units times exp(-log_scale)
    std::vector<double> log_scale;
};

// Chunks keep |y| near 1: growth toward 0 is about exp(T^2/2), which leaves
// double range once T exceeds ~37.
constexpr double kChunk = 1.0;
constexpr std::size_t kMaxSteps = 2'000'000;

Trace integrate_down(double lambda, double T, double tol, double sample_step, bool tabulate)
{
    const auto rhs = [lambda](const State& s, State& ds, double t) {
        ds[0] = s[1];
        ds[1] = (t * t - 2.0 * lambda) * s[0];
    };
    auto stepper = odeint::make_controlled(tol / 10.0, tol / 10.0,
                                           odeint::runge_kutta_fehlberg78<State>());

    State s{1.0, -std::sqrt(T * T - 2.0 * lambda)};
    double log_scale = 0.0;     // true state = s * exp(log_scale)
    double log_sup = 0.0;
    std::size_t steps = 0;

    std::vector<double> stops;
    if (tabulate) {
        const auto n = static_cast<long>(std::floor(T / sample_step));
        for (long k = n; k >= 1; --k) stops.push_back(static_cast<double>(k) * sample_step);
    }
    for (double c = std::floor(T / kChunk) * kChunk; c > 0.0; c -= kChunk) stops.push_back(c);
    stops.push_back(0.0);
    std::sort(stops.begin(), stops.end(), std::greater<>());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

    Trace tr;
    double t = T;
    double dt = -std::min(0.01, T / 16.0);
    const auto record_sup = [&] { log_sup = std::max(log_sup, log_scale + std::log(std::abs(s[0]) + 1e-300)); };
    for (double stop : stops) {
        if (stop >= t) continue;
        while (t > stop) {
            if (t + dt < stop) dt = stop - t;
            const double t_before = t;
            const auto res = stepper.try_step(rhs, s, t, dt);
            if (res == odeint::fail) {
                if (std::abs(dt) < 1e-14 * std::max(1.0, std::abs(t)))
                    throw NumericError("ODE step size underflow at t = " + std::to_string(t));
                continue;
            }
            if (++steps > kMaxSteps) throw NumericError("ODE step budget exhausted");
            if (t == t_before) throw NumericError("ODE made no progress at t = " + std::to_string(t));
            record_sup();
        }
        t = stop;
        const double m = std::max(std::abs(s[0]), std::abs(s[1]));
        if (!std::isfinite(m) || m == 0.0) throw NumericError("ODE solution left double range");
        if (tabulate && stop > 0.0 && std::abs(stop / sample_step - std::round(stop / sample_step)) < 1e-9) {
            tr.t.push_back(stop);
            tr.y.push_back(s[0]);
            tr.dy.push_back(s[1]);
            tr.log_scale.push_back(log_scale);
        }
        s[0] /= m;
        s[1] /= m;
        log_scale += std::log(m);
    }
    record_sup();
    // s is y(0) scaled by exp(-log_scale); normalize to sup|y| = 1.
    const double f = std::exp(log_scale - log_sup);
    tr.value0 = s[0] * f;
    tr.dvalue0 = s[1] * f;
    tr.log_sup = log_sup;
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        const double g = std::exp(tr.log_scale[i] - log_sup);
        tr.y[i] *= g;
        tr.dy[i] *= g;
    }
    std::reverse(tr.t.begin(), tr.t.end());
    std::reverse(tr.y.begin(), tr.y.end());
    std::reverse(tr.dy.begin(), tr.dy.end());
    return tr;
}

double projective_distance(double a, double b, double c, double d)
{
    return std::abs(a * d - b * c) / (std::hypot(a, b) * std::hypot(c, d));
}

} // namespace

L2Solution build_l2_solution(double lambda, Side side, double tol, const OdeConfig& cfg)
{
    if (!std::isfinite(lambda)) throw DomainError("lambda must be finite");
    if (!(tol > 0.0)) throw DomainError("ODE tolerance must be positive");
    if (cfg.tabulate && !(cfg.sample_step > 0.0)) throw DomainError("sample_step must be positive");

    const double turning = std::sqrt(2.0 * std::max(lambda, 0.0));
    const double T = cfg.start_T > 0.0 ? cfg.start_T : std::sqrt(2.0 * std::max(lambda, 0.0) + 1.0) + 6.0;
    if (!(T > turning)) throw DomainError("start_T must lie beyond the turning point sqrt(2 lambda)");

    const Trace tr = integrate_down(lambda, T, tol, cfg.sample_step, cfg.tabulate);

    L2Solution out;
    out.lambda = lambda;
    out.side = side;
    out.start_T = T;
    out.value0 = tr.value0;
    out.dvalue0 = tr.dvalue0;
    if (out.value0 == 0.0 && out.dvalue0 == 0.0) throw NumericError("ODE returned a zero boundary direction");

    if (cfg.check_projective) {
        const Trace far = integrate_down(lambda, 2.0 * T, tol, cfg.sample_step, false);
        out.error_estimate = projective_distance(tr.value0, tr.dvalue0, far.value0, far.dvalue0);
        if (out.error_estimate > tol)
            throw NumericError("projective limit not converged at lambda = " + std::to_string(lambda) +
                               " (direction moved by " + std::to_string(out.error_estimate) + ")");
    }

    if (cfg.tabulate) {
        GridFunction g;
        const double sgn = side == Side::plus ? 1.0 : -1.0;
        const std::size_t n = tr.t.size();
        g.t.resize(n);
        g.values.resize(n);
        g.d_values.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            // minus side: y_-(-t) = y_+(t), y_-'(-t) = -y_+'(t); keep t ascending
            const std::size_t j = side == Side::plus ? i : n - 1 - i;
            g.t[i] = sgn * tr.t[j];
            g.values[i] = tr.y[j];
            g.d_values[i] = sgn * tr.dy[j];
        }
        g.negative_count = side == Side::plus ? 0 : n;
        if (side == Side::plus) {
            g.boundary.f_plus = out.value0;
            g.boundary.df_plus = out.dvalue0;
        } else {
            g.boundary.f_minus = out.value0;
            g.boundary.df_minus = -out.dvalue0;
        }
        out.samples = std::move(g);
    }
    if (side == Side::minus) out.dvalue0 = -out.dvalue0;
    return out;
}

GridFunction mirror_extend(const L2Solution& y)
{
    if (y.side != Side::plus) throw DomainError("mirror_extend needs a plus-side solution");
    if (!y.samples) throw DomainError("mirror_extend needs a tabulated solution (OdeConfig::tabulate)");
    const GridFunction& p = *y.samples;
    const std::size_t n = p.size();

    GridFunction g;
    g.t.resize(2 * n);
    g.values.resize(2 * n);
    g.d_values.resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        g.t[i] = -p.t[n - 1 - i];
        g.values[i] = p.values[n - 1 - i];
        g.d_values[i] = -p.d_values[n - 1 - i];
        g.t[n + i] = p.t[i];
        g.values[n + i] = p.values[i];
        g.d_values[n + i] = p.d_values[i];
    }
    g.negative_count = n;
    g.boundary = {y.value0, -y.dvalue0, y.value0, y.dvalue0};
    return g;
}

} // namespace hosc
