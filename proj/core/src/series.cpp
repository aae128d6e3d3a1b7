#include <hosc/series.hpp>

#include <hosc/error.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace hosc {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_omega(double omega)
{
    if (!std::isfinite(omega) || omega < 0.0)
        throw DomainError("omega must be a nonnegative finite number");
    if (omega > kMaxOmega)
        throw DomainError("omega is restricted to [0, 64]: u(t, omega) overflows beyond");
}

void check_t(double t)
{
    if (!std::isfinite(t) || t < 0.0) throw DomainError("t must be a nonnegative finite number");
}

double log_add(double a, double b)
{
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

// log q(omega) = log max{1, k! a_{2k} : 1 <= k <= n0}, carried in log space
// because a_{2k} underflows long before n0 for omega near the upper limit.
double log_q(double omega, int n0)
{
    const double log_w2 = omega > 0.0 ? std::log(2.0 * omega * omega) : kNegInf;
    double prev = 0.0;                                        // log a_0
    double cur = omega > 0.0 ? 2.0 * std::log(omega) : kNegInf; // log a_2
    double best = std::max(0.0, cur);
    for (int k = 1; k < n0; ++k) {
        const double next = log_add(log_w2 + cur, prev) -
                            std::log((2.0 * k + 2.0) * (2.0 * k + 1.0));
        prev = cur;
        cur = next;
        best = std::max(best, std::lgamma(k + 2.0) + cur);
    }
    return best;
}

// log of  q * sum_{k >= m} x^k / k!  using the geometric majorant of the
// ratio x/(k+1); valid for m + 1 > x.
double log_factorial_tail(double lq, double x, int m)
{
    return lq + m * std::log(x) - std::lgamma(m + 1.0) - std::log1p(-x / (m + 1.0));
}

struct Partial {
    double sum = 0.0;        // sum_k T_k
    double weighted = 0.0;   // sum_k 2k T_k  (= t * u'(t))
};

enum class Target { value, derivative };

// Sums T_k = a_{2k} t^{2k} through the recursion on the terms themselves:
// T_{k+1} = (2 w^2 x T_k + x^2 T_{k-1}) / ((2k+2)(2k+1)),  x = t^2.
Partial sum_series(const SeriesSolution& s, double x, double rel_tol, Target target)
{
    const double w2 = 2.0 * s.omega * s.omega;
    const double log_tol = std::log(rel_tol);
    const int budget = s.size();

    double prev = s.coeffs[0];
    double cur = s.coeffs[1] * x;
    Partial p{prev + cur, 2.0 * cur};

    for (int k = 1;; ++k) {
        if (!std::isfinite(p.sum) || !std::isfinite(p.weighted))
            throw NumericError("u(t, omega) overflows double range");
        const int m = k + 1;
        if (m + 1 > x) {
            if (target == Target::value) {
                if (cur <= 0.1 * rel_tol * p.sum &&
                    log_factorial_tail(s.log_q_bound, x, m) <= log_tol + std::log(p.sum))
                    return p;
            } else if (p.weighted > 0.0) {
                // t * (tail of u') <= 2 q x sum_{j >= k} x^j / j!
                const double tail = std::log(2.0 * x) + log_factorial_tail(s.log_q_bound, x, k);
                if (2.0 * k * cur <= 0.1 * rel_tol * p.weighted &&
                    tail <= log_tol + std::log(p.weighted))
                    return p;
            }
        }
        if (k + 1 >= budget)
            throw NumericError("series coefficient budget exhausted (" + std::to_string(budget) +
                               " terms); rebuild with more terms");
        const double next = (w2 * x * cur + x * x * prev) / ((2.0 * k + 2.0) * (2.0 * k + 1.0));
        prev = cur;
        cur = next;
        p.sum += cur;
        p.weighted += 2.0 * (k + 1) * cur;
    }
}

const SeriesSolution& covering(const SeriesSolution& s, double t_max, SeriesSolution& storage)
{
    const int need = required_terms(s.omega, t_max, 1e-16);
    if (s.size() >= need) return s;
    storage = build_series(s.omega, need);
    return storage;
}

struct ScaledTail {
    double u_at_t;
    double integral;  // int_t^inf (u(t)/u(s))^2 ds
};

ScaledTail scaled_tail_integral(const SeriesSolution& s, double t, const QuadratureConfig& qc)
{
    SeriesSolution storage_t;
    const double ut = eval_u(covering(s, t, storage_t), t);
    const DecayCutoff cut = decay_cutoff(s.omega, t, ut, qc.abs_tol * qc.cutoff_margin);

    SeriesSolution storage_s;
    const SeriesSolution& ser = covering(s, cut.cutoff, storage_s);
    const auto integrand = [&](double x) {
        const double r = ut / eval_u(ser, x);
        return r * r;
    };
    const QuadratureResult q = integrate(integrand, t, cut.cutoff, qc);
    return {ut, q.value};
}

} // namespace

int certified_index(double omega)
{
    check_omega(omega);
    const double w2 = omega * omega;
    for (int n = 1;; ++n) {
        // For w^2 > 1/4 the ratio decreases in n; otherwise it stays below 1/4.
        if (w2 / (2.0 * n + 1.0) + n / (2.0 * (2.0 * n + 1.0)) < 1.0) return n;
    }
}

SeriesSolution build_series(double omega, int n_terms)
{
    const int n0 = certified_index(omega);
    if (n_terms < 3) throw DomainError("build_series needs at least 3 terms");
    if (n_terms < n0 + 1)
        throw DomainError("build_series: " + std::to_string(n_terms) +
                          " terms cannot certify the factorial bound (n0 = " +
                          std::to_string(n0) + ")");

    SeriesSolution s;
    s.omega = omega;
    s.n0 = n0;
    s.coeffs.resize(static_cast<std::size_t>(n_terms));
    s.coeffs[0] = 1.0;
    s.coeffs[1] = omega * omega;
    const double w2 = 2.0 * omega * omega;
    for (int k = 1; k + 1 < n_terms; ++k)
        s.coeffs[k + 1] = (w2 * s.coeffs[k] + s.coeffs[k - 1]) / ((2.0 * k + 2.0) * (2.0 * k + 1.0));
    s.log_q_bound = log_q(omega, n0);
    return s;
}

int required_terms(double omega, double t_max, double rel_tol)
{
    check_omega(omega);
    check_t(t_max);
    const int n0 = certified_index(omega);
    const int floor_terms = std::max(3, n0 + 1);
    const double x = t_max * t_max;
    if (x == 0.0) return floor_terms;

    const double lq = log_q(omega, n0);
    // Headroom for the derivative bound, which carries an extra factor 2x.
    const double target = std::log(rel_tol) - std::log(2.0 * x + 2.0);
    int m = 1;
    while (m + 1 <= x || log_factorial_tail(lq, x, m) > target) ++m;
    return std::max(floor_terms, m + 16);
}

double eval_u(const SeriesSolution& s, double t, double rel_tol)
{
    check_t(t);
    if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
    const double x = t * t;
    if (x == 0.0) return s.coeffs[0];
    return sum_series(s, x, rel_tol, Target::value).sum;
}

double eval_u_prime(const SeriesSolution& s, double t, double rel_tol)
{
    check_t(t);
    if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
    if (t == 0.0) return 0.0;
    const double x = t * t;
    if (x == 0.0) return 2.0 * s.omega * s.omega * t;
    return sum_series(s, x, rel_tol, Target::derivative).weighted / t;
}

DecayCutoff decay_cutoff(double omega, double t, double u_at_t, double budget)
{
    const double kappa = std::sqrt(t * t + 2.0 * omega * omega);
    const double c2 = 2.0 * std::sqrt(1.5 * std::numbers::pi);
    const auto tail = [&](double s) {
        const double comparison = kappa > 0.0
            ? 2.0 / (std::exp(2.0 * kappa * (s - t)) + 1.0) / kappa
            : std::numeric_limits<double>::infinity();
        const double gaussian = u_at_t * u_at_t * c2 * std::erfc(s * std::sqrt(2.0 / 3.0));
        return std::min(comparison, gaussian);
    };

    double lo = t;
    double hi = t + 1.0;
    for (int i = 0; tail(hi) > budget; ++i) {
        if (i > 60) throw NumericError("decay cutoff could not be bracketed");
        lo = hi;
        hi = t + 2.0 * (hi - t);
    }
    for (int i = 0; i < 80 && hi - lo > 1e-12 * (1.0 + hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (tail(mid) <= budget ? hi : lo) = mid;
    }
    return {hi, tail(hi)};
}

double eval_v(const SeriesSolution& s, double t, const QuadratureConfig& qc)
{
    check_t(t);
    qc.validate();
    const ScaledTail st = scaled_tail_integral(s, t, qc);
    return st.integral / st.u_at_t;
}

double eval_v_prime(const SeriesSolution& s, double t, const QuadratureConfig& qc)
{
    check_t(t);
    qc.validate();
    const ScaledTail st = scaled_tail_integral(s, t, qc);
    SeriesSolution storage;
    const double up = eval_u_prime(covering(s, t, storage), t);
    return (up * st.integral / st.u_at_t - 1.0) / st.u_at_t;
}

double eval_G(double omega, const QuadratureConfig& qc)
{
    check_omega(omega);
    qc.validate();
    const SeriesSolution s = build_series(omega, required_terms(omega, 0.0, 1e-16));
    return scaled_tail_integral(s, 0.0, qc).integral;
}

double alpha_A(const QuadratureConfig& qc)
{
    return std::atan(eval_G(0.0, qc));
}

double alpha_B(const QuadratureConfig& qc)
{
    return std::atan(eval_G(0.0, qc) / std::numbers::sqrt2);
}

DecayingSolution::DecayingSolution(double omega, double t_max, QuadratureConfig qc)
    : qc_(qc), t_max_(t_max)
{
    check_omega(omega);
    check_t(t_max);
    qc_.validate();
    const SeriesSolution near = build_series(omega, required_terms(omega, t_max, 1e-16));
    const double ut = eval_u(near, t_max);
    const DecayCutoff cut = decay_cutoff(omega, t_max, ut, qc_.abs_tol * qc_.cutoff_margin);
    series_ = build_series(omega, required_terms(omega, cut.cutoff, 1e-16));
}

double DecayingSolution::value(double t) const
{
    if (t > t_max_) throw DomainError("DecayingSolution evaluated beyond its t_max");
    return eval_v(series_, t, qc_);
}

double DecayingSolution::derivative(double t) const
{
    if (t > t_max_) throw DomainError("DecayingSolution evaluated beyond its t_max");
    return eval_v_prime(series_, t, qc_);
}

double DecayingSolution::second_derivative(double t) const
{
    const double w = series_.omega;
    return (t * t + 2.0 * w * w) * value(t);
}

std::vector<std::array<double, 2>> DecayingSolution::tabulate(const std::vector<double>& ts) const
{
    std::vector<std::array<double, 2>> out(ts.size());
    if (ts.empty()) return out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        check_t(ts[i]);
        if (i > 0 && !(ts[i] > ts[i - 1])) throw DomainError("tabulate needs ascending nodes");
    }
    if (ts.back() > t_max_) throw DomainError("DecayingSolution evaluated beyond its t_max");

    const ScaledTail last = scaled_tail_integral(series_, ts.back(), qc_);
    double J = last.integral;
    double u_next = last.u_at_t;
    for (std::size_t k = ts.size(); k-- > 0;) {
        const double t = ts[k];
        const double ut = eval_u(series_, t);
        if (k + 1 < ts.size()) {
            const auto integrand = [&](double x) {
                const double r = ut / eval_u(series_, x);
                return r * r;
            };
            const double ratio = ut / u_next;
            J = integrate(integrand, t, ts[k + 1], qc_).value + ratio * ratio * J;
        }
        const double up = eval_u_prime(series_, t);
        out[k] = {J / ut, (up * J / ut - 1.0) / ut};
        u_next = ut;
    }
    return out;
}

} // namespace hosc
